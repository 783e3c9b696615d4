"""Gated-CNN + Bi-LSTM sequence classifier.

Architecture, configurable per :class:`AblationConfig`: batch-norm the
102-wide inputs, run parallel gated convolution branches (kernel widths 2/3,
128 filters, stride 1, "same" padding; branch output A * sigmoid(B)),
concatenate along channels, batch-norm again, a bidirectional LSTM with 100
units per direction, a global max-pool over time (padded steps masked to
-inf and excluded), then dense-64 + ReLU, dropout 0.5, and a sigmoid output
unit.  Padded timesteps are kept out of the recurrence with packed
sequences, so extending a sample with zero padding cannot change its
prediction.
"""

from __future__ import annotations

import torch
from torch import nn

from .config import AblationConfig, InvalidConfig
from .data import FEATURE_WIDTH


def gated_linear_unit(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    """g(A, B) = A * sigmoid(B), the information gate of each conv branch."""
    return a * torch.sigmoid(b)


def gated_linear_unit_grads(a: torch.Tensor, b: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
    """Analytic (dg/dA, dg/dB) = (sigmoid(B), A * sigmoid(B) * (1 - sigmoid(B)))."""
    gate = torch.sigmoid(b)
    return gate, a * gate * (1.0 - gate)


class GatedConvBranch(nn.Module):
    """Two parallel 1-D convolutions combined by the gate."""

    def __init__(self, in_channels: int, filters: int, kernel_size: int):
        super().__init__()
        self.conv_a = nn.Conv1d(in_channels, filters, kernel_size, stride=1, padding="same")
        self.conv_b = nn.Conv1d(in_channels, filters, kernel_size, stride=1, padding="same")

    def forward(self, x: torch.Tensor) -> torch.Tensor:  # (B, C, T) -> (B, F, T)
        return gated_linear_unit(self.conv_a(x), self.conv_b(x))


class CallSequenceClassifier(nn.Module):
    def __init__(self, config: AblationConfig):
        super().__init__()
        config.validate()
        self.config = config
        self.bn_input = nn.BatchNorm1d(FEATURE_WIDTH) if config.use_bn_input else None
        self.branches = nn.ModuleList(
            GatedConvBranch(FEATURE_WIDTH, config.filters, k) for k in config.kernel_sizes
        )
        channels = config.filters * len(config.kernel_sizes) if config.kernel_sizes else FEATURE_WIDTH
        self.bn_cnn = (
            nn.BatchNorm1d(channels) if (config.use_bn_after_cnn and self.branches) else None
        )
        if config.lstm_layers > 0:
            self.lstm = nn.LSTM(
                input_size=channels,
                hidden_size=config.lstm_units,
                num_layers=config.lstm_layers,
                bidirectional=True,
                batch_first=True,
            )
            pooled = 2 * config.lstm_units
        else:
            self.lstm = None
            pooled = channels
        self.dense = nn.Linear(pooled, config.dense_units)
        self.dropout = nn.Dropout(config.dropout)
        self.output = nn.Linear(config.dense_units, 1)

    def forward(self, x: torch.Tensor, lengths: torch.Tensor | None = None) -> torch.Tensor:
        """(batch, T, 102) [+ true lengths] -> (batch, 1) probabilities."""
        if x.dim() != 3 or x.shape[-1] != FEATURE_WIDTH:
            raise InvalidConfig(f"expected (batch, T, {FEATURE_WIDTH}) input, got {tuple(x.shape)}")
        if lengths is None:
            lengths = torch.full((x.shape[0],), x.shape[1], dtype=torch.int64)

        features = x.transpose(1, 2)  # (B, 102, T)
        if self.bn_input is not None:
            features = self.bn_input(features)
        if self.branches:
            features = torch.cat([branch(features) for branch in self.branches], dim=1)
        if self.bn_cnn is not None:
            features = self.bn_cnn(features)
        features = features.transpose(1, 2)  # (B, T, C)

        if self.lstm is not None:
            packed = nn.utils.rnn.pack_padded_sequence(
                features, lengths.cpu(), batch_first=True, enforce_sorted=False
            )
            packed_out, _ = self.lstm(packed)
            features, _ = nn.utils.rnn.pad_packed_sequence(
                packed_out, batch_first=True, total_length=x.shape[1]
            )

        # global max-pool over valid timesteps only
        mask = torch.arange(x.shape[1], device=x.device)[None, :] >= lengths[:, None]
        features = features.masked_fill(mask[:, :, None], float("-inf"))
        pooled = features.max(dim=1).values

        hidden = self.dropout(torch.relu(self.dense(pooled)))
        return torch.sigmoid(self.output(hidden))


def build_model(config: AblationConfig) -> CallSequenceClassifier:
    """Construct a trainable classifier for one configuration."""
    return CallSequenceClassifier(config)
