"""Actions module for attenuated-schemes."""
