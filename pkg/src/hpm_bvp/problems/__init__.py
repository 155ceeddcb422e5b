"""Bundled problem files (.bvp), one per worked example."""

from __future__ import annotations

from importlib import resources


def names() -> list[str]:
    out = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(".bvp"):
            out.append(entry.name[: -len(".bvp")])
    return sorted(out)


def load_text(name: str) -> str:
    base = name.removesuffix(".bvp")
    resource = resources.files(__name__) / f"{base}.bvp"
    if not resource.is_file():
        raise FileNotFoundError(f"no bundled problem named {name!r}")
    return resource.read_text(encoding="utf-8")
