"""Append-only JSON-lines checkpoint for :func:`run_search`.

Line 1 is a header naming the run; each further line records one finished
chunk and its finds. A final line without a newline is a torn write from a
crash and is dropped on resume; anything else that fails to parse is an
error.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from ..errors import CheckpointError

log = logging.getLogger(__name__)

VERSION = 1


class Checkpoint:
    def __init__(self, path: Path, height: int, chunk_size: int, n_chunks: int):
        self.path = Path(path)
        self.header = {
            "kind": "header",
            "version": VERSION,
            "height": height,
            "chunk_size": chunk_size,
            "n_chunks": n_chunks,
        }
        self._fh = None

    # -- reading ---------------------------------------------------------
    def load(self) -> dict:
        from .core import FoundTriangle

        raw = self.path.read_bytes()
        lines = raw.split(b"\n")
        if raw and not raw.endswith(b"\n"):
            log.warning("dropping torn final line of %s", self.path)
        lines = lines[:-1]  # the piece after the last newline is empty or torn
        if not lines:
            raise CheckpointError(f"{self.path}: no header line")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"{self.path}: unreadable header") from exc
        if header != self.header:
            raise CheckpointError(f"{self.path}: header {header} does not match run {self.header}")
        done = {}
        for lineno, line in enumerate(lines[1:], start=2):
            try:
                rec = json.loads(line)
                if rec["kind"] == "complete":
                    continue
                if rec["kind"] != "chunk":
                    raise ValueError(f"unknown record kind {rec['kind']!r}")
                cid = int(rec["id"])
                finds = [FoundTriangle.from_json(d) for d in rec["finds"]]
            except (ValueError, KeyError, TypeError) as exc:
                raise CheckpointError(f"{self.path}:{lineno}: corrupt record ({exc})") from exc
            if not 0 <= cid < self.header["n_chunks"]:
                raise CheckpointError(f"{self.path}:{lineno}: chunk id {cid} out of range")
            if cid in done:
                raise CheckpointError(f"{self.path}:{lineno}: chunk {cid} recorded twice")
            done[cid] = finds
        return done

    # -- writing ---------------------------------------------------------
    def open(self, resume: bool) -> dict:
        """Prepare the file for appending and return chunks already done."""
        done = {}
        if resume and self.path.exists():
            done = self.load()
            log.info("resuming from %s with %d chunks done", self.path, len(done))
        elif resume:
            log.info("no checkpoint at %s; starting fresh", self.path)
        # rewrite so a dropped torn tail cannot glue onto the next append
        self._rewrite(done, complete=False)
        self._fh = open(self.path, "a", encoding="utf-8")
        return done

    def append(self, chunk_id: int, finds) -> None:
        rec = {"kind": "chunk", "id": chunk_id, "finds": [f.to_json() for f in finds]}
        self._fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def compact(self, done: dict) -> None:
        self._rewrite(done, complete=True)

    def _rewrite(self, done: dict, complete: bool) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name + ".", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(self.header, sort_keys=True) + "\n")
                for cid in sorted(done):
                    rec = {"kind": "chunk", "id": cid, "finds": [f.to_json() for f in done[cid]]}
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
                if complete:
                    fh.write(json.dumps({"kind": "complete"}) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
