"""
Value objects shared across attenuated-schemes.
"""
