"""
Attenuated-space association schemes

Exact construction and verification of association schemes on attenuated spaces.
"""

__version__ = "0.1.0"
