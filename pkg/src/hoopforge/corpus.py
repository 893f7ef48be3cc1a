"""Corpus persistence: one algebra text file per canonical algebra,
named by order and sequence number.
"""

from __future__ import annotations

import os

from hoopforge import hoops, terms
from hoopforge.errors import HoopforgeError, MalformedTable

ENV_VAR = "HOOPFORGE_CORPUS"


def corpus_filename(order: int, seq: int) -> str:
    return f"hoop_o{order}_{seq:03d}.alg"


def save_corpus(directory: str, algebras) -> list:
    """Write canonical algebras, one file each; returns the file names."""
    os.makedirs(directory, exist_ok=True)
    by_order = {}
    names = []
    for h in algebras:
        seq = by_order.get(h.order, 0)
        by_order[h.order] = seq + 1
        name = corpus_filename(h.order, seq)
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(terms.format_algebra(h, name[:-4]))
        names.append(name)
    return names


def load_corpus(directory: str) -> list:
    """Read every .alg file back, validating each; errors name the file."""
    out = []
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".alg"):
            continue
        path = os.path.join(directory, name)
        with open(path) as fh:
            text = fh.read()
        try:
            out.append(terms.parse_algebra(text))
        except HoopforgeError as exc:
            raise MalformedTable(f"{path}: {exc}") from exc
    return out


def corpus_up_to(max_order: int, budget: int = hoops.DEFAULT_BUDGET,
                 directory: str | None = None) -> list:
    """The enumerated corpus, optionally persisted to a directory.

    When the directory already holds algebras of every order up to
    max_order they are loaded instead of recomputed; otherwise the
    corpus is enumerated and, if a directory was named, saved there.
    """
    if directory is None:
        directory = os.environ.get(ENV_VAR) or None
    if directory and os.path.isdir(directory) and os.listdir(directory):
        loaded = load_corpus(directory)
        if loaded and max(h.order for h in loaded) >= max_order:
            return [h for h in loaded if h.order <= max_order]
    algebras = hoops.standard_corpus(max_order, "hoop", budget)
    if directory:
        save_corpus(directory, algebras)
    return algebras
