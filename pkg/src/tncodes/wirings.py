"""Fusion-schedule tables for the shipped networks (filled by generators)."""

FIG1B = None
SURFACE = {}
COLOUR_19 = None
BEST_CENTRAL_PERM = {}
