"""Exact double canonical bases for quantized enveloping algebras."""

from .algebra import Algebra

__all__ = ["Algebra"]
__version__ = "0.1.0"
