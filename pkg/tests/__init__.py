"""Tests for Co-Apply"""
