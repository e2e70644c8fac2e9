"""
Test suite for the laplimits package.
"""
