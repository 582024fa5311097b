#!/usr/bin/env python3
"""Measured key and signature sizes next to the SPHINCS+ reference rows.

Run: python3 demos/size_table.py
"""
from sigbench.sizes import format_table, size_table

print(format_table(size_table()))
