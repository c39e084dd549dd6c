"""
Test package for qwlift.
"""
