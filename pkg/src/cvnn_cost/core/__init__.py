"""Ledger, metered arithmetic, specs and errors"""
