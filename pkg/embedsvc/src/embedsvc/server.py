"""Process entry point: configuration from the environment, then uvicorn.

Environment variables:
    PORT            listen port (default 8099)
    EMBEDSVC_PRESET model preset, vit_b32 (default) or vit_small
    EMBEDSVC_SEED   weight-initialization seed (default 0)
"""

from __future__ import annotations

import os

import uvicorn

from .app import create_app

DEFAULT_PORT = 8099


def main() -> int:
    port = int(os.environ.get("PORT", DEFAULT_PORT))
    preset = os.environ.get("EMBEDSVC_PRESET", "vit_b32")
    seed = int(os.environ.get("EMBEDSVC_SEED", "0"))
    app = create_app(preset=preset, seed=seed)
    uvicorn.run(app, host="0.0.0.0", port=port, log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
