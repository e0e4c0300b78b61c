"""psiverify test suite"""
