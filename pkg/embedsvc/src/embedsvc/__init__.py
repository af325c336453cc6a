from .app import MAX_BATCH, create_app
from .model import (
    EmbeddingModel,
    ImageDecodeError,
    PREPROCESSING,
    PRESETS,
)

__all__ = [
    "MAX_BATCH", "create_app",
    "EmbeddingModel", "ImageDecodeError", "PREPROCESSING", "PRESETS",
]
