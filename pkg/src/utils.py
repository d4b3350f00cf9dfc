import re
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar
try:
    from .config import config
    from .errors import InputError
except ImportError:  # fallback when run directly
    from config import config
    from errors import InputError

T = TypeVar("T")
R = TypeVar("R")

RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')

def parse_rational(text) -> Fraction:
    """Parse "p/q", "p" or an int into a Fraction.
    Floats are rejected so that no rounding sneaks into exact computations.
    """
    if isinstance(text, bool):
        raise InputError(f"Not a rational number: {text!r}", {"value": repr(text)})
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = RATIONAL_RE.match(str(text))
    if not m:
        raise InputError(f"Not a rational number: {text!r}", {"value": str(text)})
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise InputError(f"Zero denominator in {text!r}", {"value": str(text)})
    return Fraction(num, den)

def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

def parse_vector(text: str) -> List[Fraction]:
    """Comma separated rationals, e.g. "1,0,-1/2"."""
    parts = [p for p in text.split(',') if p.strip()]
    if not parts:
        raise InputError("Empty vector", {"value": text})
    return [parse_rational(p) for p in parts]

def edge_key(edges: Iterable[int]) -> str:
    """Text key of an edge set: sorted 1-based ids joined by commas."""
    return ",".join(str(e + 1) for e in sorted(edges))

def parse_edge_key(key: str, n: Optional[int] = None) -> frozenset:
    """0-based edge indices from "1,3"; ids must lie in 1..n when n is given."""
    key = key.strip().strip('[]')
    if not key:
        return frozenset()
    try:
        ids = [int(p) for p in key.split(',')]
    except ValueError:
        raise InputError(f"Bad edge list {key!r}", {"key": key})
    bad = [i for i in ids if i < 1 or (n is not None and i > n)]
    if bad:
        raise InputError(f"Edge id out of range in {key!r}", {"key": key, "ids": bad, "n": n})
    return frozenset(i - 1 for i in ids)

def parallel_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Order-preserving map; runs on a thread pool when more than one thread is configured."""
    workers = threads if threads is not None else config.threads
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
