"""RKU e-service: repair order tracking, complaints, and fuzzy FAQ search."""

__version__ = "0.1.0"
