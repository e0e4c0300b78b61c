"""Core psiverify modules"""
