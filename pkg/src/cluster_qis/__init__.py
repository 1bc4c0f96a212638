# SPDX-FileCopyrightText: 2025-present Faria22 <fariafelipe22@hotmail.com>
#
# SPDX-License-Identifier: MIT
"""State-vector simulation of quantum information splitting over GHZ and cluster channels."""

from cluster_qis.__about__ import __version__

__all__ = ['__version__']
