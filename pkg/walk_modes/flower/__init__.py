"""Flower walk mode: cycles meeting at one hub vertex, chosen letter by letter."""
