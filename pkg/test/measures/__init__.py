"""
Measure algebra tests
"""
