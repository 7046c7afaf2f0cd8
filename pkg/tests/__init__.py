"""
Test package for the Hall/Frattini engine.
"""
