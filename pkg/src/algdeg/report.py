"""Verification reports: per-claim records with a versioned JSON schema.

A claim is {id, anchor, status, data} with status one of verified, falsified,
inconclusive, skipped.  Wall-clock timing lives in a separate top-level map so
the claim payload is byte-identical across runs for a fixed (config, seed);
--no-timing drops the map for literal reproducibility.
"""

import json
import time

from . import __version__

SCHEMA = "algdeg-report/1"

STATUS_ORDER = ("verified", "falsified", "inconclusive", "skipped")


class Report:
    def __init__(self, command, config, seed):
        self.command = command
        self.config = config
        self.seed = seed
        self.claims = []
        self.timing = {}

    def add(self, claim, seconds=None):
        if claim["status"] not in STATUS_ORDER:
            raise ValueError(f"bad claim status {claim['status']!r}")
        self.claims.append(claim)
        if seconds is not None:
            self.timing[claim["id"]] = round(seconds, 6)

    def extend(self, claims, seconds=None):
        share = None if seconds is None or not claims else seconds / len(claims)
        for c in claims:
            self.add(c, share)

    def timed(self, fn, *args, **kwargs):
        """Run fn, collect its claim list, and amortize the elapsed time."""
        t0 = time.monotonic()
        claims = fn(*args, **kwargs)
        if isinstance(claims, dict):
            claims = [claims]
        self.extend(claims, time.monotonic() - t0)
        return claims

    def skip_all(self, ids_anchors, reason):
        for cid, anchor in ids_anchors:
            self.add({"id": cid, "anchor": anchor, "status": "skipped",
                      "data": {"reason": reason}})

    @property
    def counts(self):
        out = {s: 0 for s in STATUS_ORDER}
        for c in self.claims:
            out[c["status"]] += 1
        return out

    @property
    def exit_code(self):
        counts = self.counts
        if counts["falsified"]:
            return 1
        if counts["inconclusive"]:
            return 3
        return 0

    def to_json(self, with_timing=True):
        body = {
            "schema": SCHEMA,
            "tool": "algdeg",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "claims": self.claims,
        }
        if with_timing:
            body["timing"] = self.timing
        return body

    def dumps(self, with_timing=True):
        return json.dumps(self.to_json(with_timing), sort_keys=True, indent=2)

    def write(self, path, with_timing=True):
        with open(path, "w") as fh:
            fh.write(self.dumps(with_timing) + "\n")

    def print_summary(self, out=print):
        for c in self.claims:
            out(f"[{c['status']:>12}] {c['id']}: {c['anchor']}")
        counts = self.counts
        out("summary: " + ", ".join(f"{counts[s]} {s}" for s in STATUS_ORDER))
