"""
amscheme Test Suite
"""
