"""
One-dimensional pairing engine tests
"""
