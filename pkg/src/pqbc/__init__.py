"""Desk-scale laboratory for block-cipher security: seeded ideal ciphers,
whitened and tweakable constructions, swap-chain hybrid algebra, classical
attacks, toy quantum simulations, closed-form advantage bounds, and
Monte-Carlo distinguishing experiments."""

from . import (attacks, bounds, cipher_core, constructions, experiments,
               gf2n, modes, qsim)

__version__ = "0.1.0"

__all__ = ["attacks", "bounds", "cipher_core", "constructions",
           "experiments", "gf2n", "modes", "qsim", "__version__"]
