"""fdhom Test Suite"""
