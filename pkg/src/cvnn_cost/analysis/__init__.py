"""Closed-form cost model and asymptotic classes"""
