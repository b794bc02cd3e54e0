"""Utility functions for attenuated-schemes."""
