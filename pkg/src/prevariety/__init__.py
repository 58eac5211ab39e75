"""Tropical prevarieties of polynomial systems in exact arithmetic."""
