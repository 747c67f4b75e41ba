"""Opaque identifier generation, kept injectable for deterministic tests."""
import uuid


def new_id() -> str:
    return uuid.uuid4().hex
