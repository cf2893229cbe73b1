"""OEIS b-file reading and prefix alignment.

A b-file lists lines ``n a(n)``; ``#`` starts a comment.  Network access
is optional and isolated in :func:`fetch_bfile`; everything else works on
local text.
"""
from __future__ import annotations

import re
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple


class NetworkError(RuntimeError):
    """The b-file could not be downloaded."""


def parse_bfile(text: str) -> List[Tuple[int, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ValueError(f"line {lineno}: expected 'n a(n)'")
        out.append((int(parts[0]), int(parts[1])))
    for (a, _), (b, _) in zip(out, out[1:]):
        if b != a + 1:
            raise ValueError(f"b-file indices not consecutive at {a} -> {b}")
    return out


def load_bfile(path) -> List[Tuple[int, int]]:
    return parse_bfile(Path(path).read_text())


def normalize_id(seq_id: str) -> str:
    m = re.fullmatch(r"[Aa]?(\d{1,6})", seq_id.strip())
    if not m:
        raise ValueError(f"not an OEIS id: {seq_id!r}")
    return f"A{int(m.group(1)):06d}"


def fetch_bfile(seq_id: str, timeout: float = 20.0) -> List[Tuple[int, int]]:
    sid = normalize_id(seq_id)
    url = f"https://oeis.org/{sid}/b{sid[1:]}.txt"
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            text = resp.read().decode("utf-8", "replace")
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkError(f"could not fetch {url}: {exc}") from exc
    return parse_bfile(text)


@dataclass
class AlignmentReport:
    seq_id: str
    ok: bool
    shift: Optional[int]          # ours[i] == ref a(i - shift)
    agree: int                    # length of the agreeing overlap
    compared: int
    ref_offset: int
    first_mismatch: Optional[Tuple[int, int, int]] = None  # (our index, ours, theirs)
    note: str = ""

    def to_json(self) -> dict:
        return {"id": self.seq_id, "ok": self.ok, "shift": self.shift, "agree": self.agree,
                "compared": self.compared, "ref_offset": self.ref_offset,
                "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
                "note": self.note}


def align(seq_id: str, ours: Sequence[int], ref: Sequence[Tuple[int, int]],
          max_shift: int = 4, min_overlap: int = 5) -> AlignmentReport:
    """Find the index shift under which our terms (indexed from 0) match the reference.

    Shifts are tried by increasing |shift|; the first one whose overlap of
    at least ``min_overlap`` terms agrees completely wins.  Otherwise the
    shift with the longest agreeing prefix is reported as a failure.
    """
    table: Dict[int, int] = dict(ref)
    ref_offset = ref[0][0] if ref else 0
    best = None
    for s in sorted(range(-max_shift, max_shift + 1), key=lambda t: (abs(t), t)):
        idx = [i for i in range(len(ours)) if (i - s) in table]
        if len(idx) < min_overlap:
            continue
        agree = 0
        bad = None
        for i in idx:
            if int(ours[i]) == table[i - s]:
                agree += 1
            else:
                bad = (i, int(ours[i]), table[i - s])
                break
        if bad is None:
            return AlignmentReport(seq_id, True, s, agree, len(idx), ref_offset)
        if best is None or agree > best[1]:
            best = (s, agree, len(idx), bad)
    if best is None:
        return AlignmentReport(seq_id, False, None, 0, 0, ref_offset, note="no overlap")
    s, agree, n, bad = best
    return AlignmentReport(seq_id, False, s, agree, n, ref_offset, bad, note="no shift aligns")


def crosscheck(seq_id: str, ours: Sequence[int], path=None, network: bool = False,
               **kw) -> AlignmentReport:
    if path is not None:
        ref = load_bfile(path)
    elif network:
        ref = fetch_bfile(seq_id)
    else:
        raise ValueError("give a local b-file path or enable network access")
    return align(normalize_id(seq_id), ours, ref, **kw)


def write_bfile(values: Sequence[int], offset: int = 0, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
    return "\n".join(lines) + "\n"


__all__ = ["NetworkError", "parse_bfile", "load_bfile", "normalize_id", "fetch_bfile",
           "AlignmentReport", "align", "crosscheck", "write_bfile"]
