"""Append-only JSON-lines store of local factors keyed by (module hash, β)."""

import fcntl
import json
import os

from .lfunc import LocalFactor


class LocalFactorCache:
    """One JSON record per line; later records for a key win on reload.

    Writes take an exclusive lock and go out as a single append, so several
    processes may insert distinct keys into the same file.
    """

    def __init__(self, path, F):
        self.path = path
        self.F = F
        self._data = {}
        self.bad_lines = []
        if os.path.exists(path):
            self._load()

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    lf = LocalFactor.from_json(self.F, rec)
                    self._data[(rec["module"], _beta_key(lf.beta))] = lf
                except (ValueError, KeyError, TypeError) as exc:
                    self.bad_lines.append((lineno, str(exc)))

    def __len__(self):
        return len(self._data)

    def get(self, module_hash, beta):
        return self._data.get((module_hash, _beta_key(beta)))

    def put(self, module_hash, lf):
        rec = {"module": module_hash}
        rec.update(lf.to_json())
        line = json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        self._data[(module_hash, _beta_key(lf.beta))] = lf

    def items(self):
        for (h, _), lf in sorted(self._data.items()):
            yield h, lf

    def verify(self, modules=None):
        """Check every record; ``modules`` maps hashes to modules for recounts.

        Returns a list of (module hash, β, problem) triples.
        """
        from .lfunc import count_module
        problems = []
        for h, lf in self.items():
            for msg in lf.check():
                problems.append((h, str(lf.beta), msg))
            G = (modules or {}).get(h)
            if G is not None and count_module(G, lf.beta) != lf.count_G:
                problems.append((h, str(lf.beta), "stored count_G differs from a recount"))
        for lineno, msg in self.bad_lines:
            problems.append(("?", f"line {lineno}", f"unreadable record: {msg}"))
        return problems


def _beta_key(beta):
    return tuple(beta.c)
