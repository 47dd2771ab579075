import hashlib
import json
import struct
from typing import IO, Iterable, List

import pandas as pd

from helpers.constants import TOOL_NAME, TOOL_VERSION

MASK_64 = (1 << 64) - 1


def stable_hash(*values: int) -> int:
    """
    Portable 64-bit seed mixer: BLAKE2b (8-byte digest) over the values packed
    as little-endian unsigned 64-bit integers.
    """
    packed = b"".join(struct.pack("<Q", int(v) & MASK_64) for v in values)
    return int.from_bytes(hashlib.blake2b(packed, digest_size=8).digest(), "little")


def config_hash(resolved: dict) -> str:
    canonical = json.dumps(resolved, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def provenance_line(resolved: dict, master_seed: int) -> str:
    return (f"# tool={TOOL_NAME} version={TOOL_VERSION} "
            f"config_sha256={config_hash(resolved)} master_seed={master_seed}\n")


def rows_to_frame(rows: Iterable, label_columns: List[str]) -> pd.DataFrame:
    """Flatten ExperimentRows into a fixed column order."""
    records = []
    for row in rows:
        record = {column: row.labels.get(column) for column in label_columns}
        record.update(metric=row.metric, value=row.value, trials=row.trials, seed=row.seed)
        records.append(record)
    return pd.DataFrame(records, columns=label_columns + ["metric", "value", "trials", "seed"])


def write_csv(df: pd.DataFrame, out: IO[str], resolved: dict, master_seed: int):
    out.write(provenance_line(resolved, master_seed))
    df.to_csv(out, index=False, float_format="%.9g", lineterminator="\n")
