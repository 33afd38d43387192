# Copyright 2026 The DialAug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Dual-encoder response ranking with ConMix augmentation."""

from ._dialaug import (
    Checkpoint,
    compute_metrics,
    conmix,
    contrastive_loss,
    generate_synthetic,
    perturb,
    ranking_loss,
    read_dialogues,
    synthetic_synonyms,
    train,
    write_dialogues,
)

__all__ = [
    "Checkpoint",
    "compute_metrics",
    "conmix",
    "contrastive_loss",
    "generate_synthetic",
    "perturb",
    "ranking_loss",
    "read_dialogues",
    "synthetic_synonyms",
    "train",
    "write_dialogues",
]
