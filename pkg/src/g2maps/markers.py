"""Sentinel values shared across the exact-arithmetic modules."""


class Infinity:
    """Marker for an infinite value (unbounded contact order, cross-ratio pole).

    A single instance ``INFINITY`` is used everywhere; compare with ``is`` or
    ``==`` (both work, equality is identity).
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("g2maps-infinity")


INFINITY = Infinity()
