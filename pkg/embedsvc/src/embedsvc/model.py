"""Frozen vision encoder: seeded random-init CLIP-style ViT with a 512-d
projection head.

No pretrained weights are downloaded; the model is constructed offline
from a fixed configuration and a fixed seed, so identical input bytes map
to identical vectors for the lifetime of a process (and across processes
with the same seed and preset).
"""

from __future__ import annotations

import base64
import binascii
import io
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
import torch
from PIL import Image, UnidentifiedImageError
from transformers import CLIPVisionConfig, CLIPVisionModelWithProjection

IMAGE_SIZE = 224
CLIP_MEAN = (0.48145466, 0.4578275, 0.40821073)
CLIP_STD = (0.26862954, 0.26130258, 0.27577711)
PREPROCESSING = ("decode-png/convert-rgb/resize-224-bilinear/scale-0-1/"
                 "normalize-clip-mean-std")

# "vit_b32" mirrors the ViT-B/32 vision tower geometry; "vit_small" is a
# reduced-depth tower for constrained CPUs. Both project to 512 dims.
PRESETS = {
    "vit_b32": CLIPVisionConfig(),
    "vit_small": CLIPVisionConfig(hidden_size=256, intermediate_size=1024,
                                  num_hidden_layers=4, num_attention_heads=8,
                                  projection_dim=512),
}


class ImageDecodeError(ValueError):
    """A batch entry that is not valid base64 or not a decodable PNG."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"image {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass
class EmbeddingModel:
    encoder: CLIPVisionModelWithProjection
    model_name: str
    dim: int

    @classmethod
    def load(cls, preset: str = "vit_b32", seed: int = 0) -> "EmbeddingModel":
        if preset not in PRESETS:
            raise ValueError(f"unknown model preset {preset!r}; "
                             f"choose from {sorted(PRESETS)}")
        torch.manual_seed(seed)
        encoder = CLIPVisionModelWithProjection(PRESETS[preset]).eval()
        for p in encoder.parameters():
            p.requires_grad_(False)
        name = f"clip-vision-{preset.replace('_', '-')}-random-init-seed{seed}"
        return cls(encoder=encoder, model_name=name,
                   dim=PRESETS[preset].projection_dim)

    def preprocess(self, image: Image.Image) -> torch.Tensor:
        image = image.convert("RGB").resize((IMAGE_SIZE, IMAGE_SIZE),
                                            Image.BILINEAR)
        x = torch.from_numpy(np.array(image)).float() / 255.0
        x = (x - torch.tensor(CLIP_MEAN)) / torch.tensor(CLIP_STD)
        return x.permute(2, 0, 1)

    def embed_images(self, images: Sequence[Image.Image]) -> List[List[float]]:
        batch = torch.stack([self.preprocess(img) for img in images])
        with torch.no_grad():
            vectors = self.encoder(pixel_values=batch).image_embeds
        vectors = vectors / vectors.norm(dim=1, keepdim=True)
        return [v.tolist() for v in vectors]

    def embed_b64(self, payloads: Sequence[str]) -> List[List[float]]:
        """Decode base64 PNG strings and embed them in input order.

        Raises ImageDecodeError naming the first offending entry."""
        images = []
        for index, payload in enumerate(payloads):
            try:
                raw = base64.b64decode(payload, validate=True)
            except (binascii.Error, ValueError, TypeError):
                raise ImageDecodeError(index, "invalid base64")
            try:
                image = Image.open(io.BytesIO(raw))
                image.load()
            except (UnidentifiedImageError, OSError, ValueError):
                raise ImageDecodeError(index, "undecodable image data")
            images.append(image)
        return self.embed_images(images)
