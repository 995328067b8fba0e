# Licensed under an MIT open source license - see LICENSE
"""
This module contains package tests.
"""
