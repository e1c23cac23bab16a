"""Modular arithmetic on Z_n: units, CRT splittings and unit subgroups."""
