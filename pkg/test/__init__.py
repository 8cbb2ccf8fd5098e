"""
Test package for pairing-calc
"""
