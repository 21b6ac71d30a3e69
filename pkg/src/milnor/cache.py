"""Content-addressed cache for certified Hilbert functions.

The cache key hashes the canonical polynomial text together with every
configuration field that influences the certificate (prime count,
escalation count, seed), so changing the seed or the polynomial gives a
different entry while performance knobs reuse the same one. Entries are
small JSON files; a corrupt entry is skipped with a warning and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from typing import Optional

from .hilbert import HilbertFunction, hilbert_function
from .linalg import RankConfig, RankResult
from .poly import SparsePolynomial, format_polynomial

CACHE_ENV = "MILNOR_CACHE_DIR"
ENTRY_SCHEMA = 1


def default_cache_dir() -> str:
    return os.environ.get(CACHE_ENV) or os.path.join(
        os.path.expanduser("~"), ".cache", "milnor")


def cache_key(f: SparsePolynomial, up_to: Optional[int],
              config: RankConfig) -> str:
    payload = {
        "polynomial": format_polynomial(f),
        "num_vars": f.num_vars,
        "up_to": up_to,
        "primes": config.primes,
        "escalation_primes": config.escalation_primes,
        "seed": config.seed,
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


class HilbertCache:
    def __init__(self, directory: Optional[str] = None):
        self.directory = directory or default_cache_dir()

    def path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def load(self, key: str) -> Optional[HilbertFunction]:
        path = self.path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data["schema"] != ENTRY_SCHEMA:
                raise ValueError(f"schema {data['schema']}")
            details = [RankResult(rank=r["rank"],
                                  primes=list(r["primes"]),
                                  ranks=list(r["ranks"]),
                                  agreement=r["agreement"],
                                  certified=r["certified"],
                                  method=r["method"],
                                  exact_verified=r["exact_verified"])
                       for r in data["rank_details"]]
            return HilbertFunction(dims=list(data["dims"]),
                                   n=data["n"], d=data["d"],
                                   stable_value=data["stable_value"],
                                   smooth_match=data["smooth_match"],
                                   certified=data["certified"],
                                   rank_details=details)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"skipping corrupt cache entry {path}: {exc}")
            return None

    def store(self, key: str, hf: HilbertFunction) -> None:
        os.makedirs(self.directory, exist_ok=True)
        data = {
            "schema": ENTRY_SCHEMA,
            "n": hf.n,
            "d": hf.d,
            "dims": list(hf.dims),
            "stable_value": hf.stable_value,
            "smooth_match": hf.smooth_match,
            "certified": hf.certified,
            "rank_details": [{
                "rank": r.rank, "primes": list(r.primes),
                "ranks": list(r.ranks), "agreement": r.agreement,
                "certified": r.certified, "method": r.method,
                "exact_verified": r.exact_verified,
            } for r in hf.rank_details],
        }
        tmp = self.path(key) + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, self.path(key))

    def entries(self) -> list[dict]:
        if not os.path.isdir(self.directory):
            return []
        out = []
        for name in sorted(os.listdir(self.directory)):
            if not name.endswith(".json"):
                continue
            path = os.path.join(self.directory, name)
            row = {"key": name[:-5], "size": os.path.getsize(path)}
            try:
                with open(path) as fh:
                    data = json.load(fh)
                row["n"] = data.get("n")
                row["d"] = data.get("d")
                row["tau"] = data.get("stable_value")
            except (OSError, ValueError):
                row["corrupt"] = True
            out.append(row)
        return out

    def clear(self) -> int:
        if not os.path.isdir(self.directory):
            return 0
        removed = 0
        for name in os.listdir(self.directory):
            if name.endswith(".json") or name.endswith(".tmp"):
                os.remove(os.path.join(self.directory, name))
                removed += 1
        return removed


def cached_hilbert_function(f: SparsePolynomial, rank_config: RankConfig,
                            cache: HilbertCache, jobs: int = 1,
                            up_to: Optional[int] = None) -> HilbertFunction:
    """hilbert_function with a read-through cache keyed on input and seed."""
    key = cache_key(f, up_to, rank_config)
    hf = cache.load(key)
    if hf is None:
        hf = hilbert_function(f, up_to=up_to, config=rank_config, jobs=jobs)
        cache.store(key, hf)
    return hf
