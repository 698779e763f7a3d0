"""
Test package for the cograph toolkit.
Contains unit, property, oracle and command line tests.
"""
