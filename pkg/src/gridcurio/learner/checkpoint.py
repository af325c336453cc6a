"""Versioned binary checkpoints for network parameters.

Layout: magic ``GCKP`` | u32 version | u64 header length | JSON header
(parameter names, shapes, dtypes, config echo) | raw arrays in header
order.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import Dict, Tuple

import numpy as np
import torch

MAGIC = b"GCKP"
VERSION = 1


def save_checkpoint(path, module: torch.nn.Module, config_echo: dict) -> None:
    params = {name: tensor.detach().numpy()
              for name, tensor in module.state_dict().items()}
    header = {
        "params": [{"name": n, "shape": list(a.shape), "dtype": str(a.dtype)}
                   for n, a in params.items()],
        "config": config_echo,
    }
    header_bytes = json.dumps(header).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<Q", len(header_bytes)))
        fh.write(header_bytes)
        for a in params.values():
            fh.write(np.ascontiguousarray(a).tobytes())


def load_checkpoint(path) -> Tuple[Dict[str, np.ndarray], dict]:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError("not a GCKP checkpoint")
    version, = struct.unpack("<I", data[4:8])
    if version != VERSION:
        raise ValueError(f"unsupported checkpoint version {version}")
    hlen, = struct.unpack("<Q", data[8:16])
    header = json.loads(data[16:16 + hlen].decode("utf-8"))
    offset = 16 + hlen
    params = {}
    for spec in header["params"]:
        a = np.frombuffer(data, dtype=np.dtype(spec["dtype"]), offset=offset,
                          count=int(np.prod(spec["shape"])) if spec["shape"] else 1)
        params[spec["name"]] = a.reshape(spec["shape"]).copy()
        offset += a.nbytes
    return params, header["config"]


def restore_module(module: torch.nn.Module, params: Dict[str, np.ndarray]) -> None:
    state = {name: torch.from_numpy(a) for name, a in params.items()}
    module.load_state_dict(state)
