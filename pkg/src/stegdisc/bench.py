"""Space-time tradeoff benchmark.

Runs the same scripted workload (write a batch of one-block files, read
them all back in order, delete a few) against a fresh in-memory backend
for each addressing mode and batch size, and reports what each mode
pays for it: bytes of local persistent state, hash iterations spent
allocating, replay iterations per read, and wall time.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field

from .carrier import CarrierPool, header_size
from .disc import MODES, Disc, DiscConfig
from .errors import SpecInvalid
from .osn import MemoryBackend


@dataclass
class BenchmarkRow:
    mode: str
    blocks: int
    persistent_bytes: int  # whole superblock+catalog document
    state_bytes: int  # document minus the catalog lines
    dictionary_bytes: int  # mode A used-address line
    hash_iterations: int  # allocation hashing for the write phase
    write_seconds: float
    read_seconds: float
    per_read_iterations: list[int] = field(default_factory=list)


def run_benchmark(
    block_counts=(10, 100),
    modes=MODES,
    n: int = 5,
    p: int = 24,
    m: int = 8,
    seed: int = 7,
) -> list[BenchmarkRow]:
    """One row per (mode, block count), in the given order.

    Files are one block each, so block count equals file count and the
    k-th read resolves the k-th highest counters; per_read_iterations
    then directly exposes how read cost scales with counter magnitude.
    """
    block_counts = tuple(block_counts)
    modes = tuple(modes)
    if not block_counts or any(not isinstance(c, int) or c < 1 for c in block_counts):
        raise SpecInvalid(f"block counts must be positive integers: {block_counts!r}")
    if not modes or any(mode not in MODES for mode in modes):
        raise SpecInvalid(f"modes must come from {MODES}: {modes!r}")
    if n < 1 or p < 1 or m < 1:
        raise SpecInvalid(f"n, p, m must be >= 1 (n={n} p={p} m={m})")

    rows = []
    for mode in modes:
        for count in block_counts:
            rows.append(_run_one(mode, count, n, p, m, seed))
    return rows


def _run_one(mode: str, count: int, n: int, p: int, m: int, seed: int) -> BenchmarkRow:
    rng = random.Random(seed)
    backend = MemoryBackend()
    config = DiscConfig.create(n=n, p=p, m=m, mode=mode, disc_id=f"bench-{mode}-{count}")
    pool = CarrierPool(synth="opaque", opaque_size=header_size(p) + max(m, 64))
    disc = Disc.format(config, backend, pool)

    names = [f"blk{i:05d}" for i in range(count)]
    payloads = {name: rng.randbytes(m) for name in names}

    start = time.perf_counter()
    for name in names:
        disc.write_file(name, payloads[name])
    write_seconds = time.perf_counter() - start
    written = disc.stats()

    per_read = []
    start = time.perf_counter()
    for name in names:
        before = disc.stats().replay_iterations
        data = disc.read_file(name)
        per_read.append(disc.stats().replay_iterations - before)
        if data != payloads[name]:
            raise AssertionError(f"benchmark read mismatch for {name}")
    read_seconds = time.perf_counter() - start

    # finish the script: drop a couple of files, disc must stay consistent
    for name in names[:: max(1, count // 3)]:
        disc.delete_file(name)

    return BenchmarkRow(
        mode=mode,
        blocks=count,
        persistent_bytes=written.persistent_bytes,
        state_bytes=written.persistent_bytes - written.catalog_bytes,
        dictionary_bytes=written.dictionary_bytes,
        hash_iterations=written.hash_iterations,
        write_seconds=write_seconds,
        read_seconds=read_seconds,
        per_read_iterations=per_read,
    )


def rows_as_dicts(rows) -> list[dict]:
    return [asdict(row) for row in rows]


def format_table(rows) -> str:
    header = f"{'mode':<5}{'blocks':>7}{'state B':>9}{'dict B':>8}{'hashes':>9}{'write s':>9}{'read s':>9}"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row.mode:<5}{row.blocks:>7}{row.state_bytes:>9}{row.dictionary_bytes:>8}"
            f"{row.hash_iterations:>9}{row.write_seconds:>9.3f}{row.read_seconds:>9.3f}"
        )
    return "\n".join(lines)
