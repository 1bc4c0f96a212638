"""Serialisation of states, matrices and report documents."""

import json
import math
from collections.abc import Mapping, Sequence
from typing import Any

import numpy as np

from cluster_qis.errors import StateError
from cluster_qis.qcore import PureState, label_name, parse_label

SIGNIFICANT_DIGITS = 12
# amplitudes below this are written as exact zeros
_CLEAN_THRESHOLD = 1e-15


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round ``value`` to ``digits`` significant digits.

    Returns
    -------
    float
        Rounded value; zero stays zero.
    """
    value = float(value)
    if value == 0 or not math.isfinite(value):
        return value
    return float(f'{value:.{digits}g}')


def _clean(value: float) -> float:
    return 0.0 if abs(value) < _CLEAN_THRESHOLD else float(value)


def complex_to_list(value: complex) -> list[float]:
    """Return ``[re, im]``.

    Returns
    -------
    list[float]
        Real and imaginary parts.
    """
    value = complex(value)
    return [_clean(value.real), _clean(value.imag)]


def complex_from_list(pair: Sequence[float]) -> complex:
    """Inverse of :func:`complex_to_list`.

    Returns
    -------
    complex
        Parsed number.
    """
    if len(pair) != 2:
        raise StateError(f'Complex numbers are written as [re, im], got {pair!r}')
    return complex(float(pair[0]), float(pair[1]))


def state_to_dict(state: PureState) -> dict[str, Any]:
    """Return ``{num_qubits, label_order, amplitudes}``.

    Returns
    -------
    dict[str, Any]
        JSON-ready state.
    """
    return {
        'num_qubits': state.num_qubits,
        'label_order': [label_name(label) for label in state.labels],
        'amplitudes': [complex_to_list(amplitude) for amplitude in state.amplitudes],
    }


def state_from_dict(data: Mapping[str, Any]) -> PureState:
    """Inverse of :func:`state_to_dict`.

    Returns
    -------
    PureState
        Parsed state.

    Raises
    ------
    StateError
        If the qubit count disagrees with the label order.
    """
    labels = tuple(parse_label(str(name)) for name in data['label_order'])
    if len(labels) != int(data['num_qubits']):
        raise StateError(f'num_qubits {data["num_qubits"]} disagrees with label_order {data["label_order"]}')
    return PureState(labels, np.array([complex_from_list(pair) for pair in data['amplitudes']]))


def matrix_to_list(matrix: np.ndarray) -> list[list[list[float]]]:
    """Return a matrix as rows of ``[re, im]`` pairs.

    Returns
    -------
    list[list[list[float]]]
        JSON-ready matrix.
    """
    return [[complex_to_list(entry) for entry in row] for row in np.asarray(matrix)]


def matrix_from_list(rows: Sequence[Sequence[Any]]) -> np.ndarray:
    """Parse a matrix whose entries are numbers or ``[re, im]`` pairs.

    Returns
    -------
    np.ndarray
        Complex matrix.
    """
    return np.array(
        [[complex_from_list(entry) if isinstance(entry, list | tuple) else complex(entry) for entry in row] for row in rows],
        dtype=np.complex128,
    )


def format_state(state: PureState, digits: int = 6) -> str:
    """Return a ket expansion such as ``0.707|00> - 0.707|11>  (2,3)``.

    Returns
    -------
    str
        Human readable state.
    """
    terms = []
    for index, amplitude in enumerate(state.amplitudes):
        if abs(amplitude) <= _CLEAN_THRESHOLD * 1e3:
            continue
        if abs(amplitude.imag) <= _CLEAN_THRESHOLD * 1e3:
            coefficient = f'{amplitude.real:+.{digits}g}'
        else:
            coefficient = f'+({amplitude.real:.{digits}g}{amplitude.imag:+.{digits}g}j)'
        terms.append(f'{coefficient}|{index:0{state.num_qubits}b}>')
    body = ' '.join(terms).removeprefix('+') or '0'
    return f'{body}  ({",".join(state.label_names())})'


def render_json(document: Mapping[str, Any]) -> str:
    """Return the indented UTF-8 JSON text of ``document``.

    Returns
    -------
    str
        JSON with keys in insertion order and a trailing newline.
    """
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def _render_text_lines(value: Any, indent: int) -> list[str]:
    pad = '  ' * indent
    if isinstance(value, Mapping):
        if {'num_qubits', 'label_order', 'amplitudes'} <= set(value):
            return [pad + format_state(state_from_dict(value))]
        lines = []
        for key, item in value.items():
            if isinstance(item, Mapping | list) and item and not _is_leaf_list(item):
                lines.append(f'{pad}{key}:')
                lines.extend(_render_text_lines(item, indent + 1))
            else:
                lines.append(f'{pad}{key}: {_scalar_text(item)}')
        return lines
    if isinstance(value, list):
        lines = []
        for position, item in enumerate(value):
            lines.append(f'{pad}- [{position}]')
            lines.extend(_render_text_lines(item, indent + 1))
        return lines
    return [pad + _scalar_text(value)]


def _is_leaf_list(value: Any) -> bool:
    return isinstance(value, list) and all(isinstance(item, int | float | str | bool) or item is None for item in value)


def _scalar_text(value: Any) -> str:
    if isinstance(value, list):
        return ', '.join(_scalar_text(item) for item in value)
    if isinstance(value, float):
        return f'{value:.{SIGNIFICANT_DIGITS}g}'
    if value is None:
        return '-'
    return str(value)


def render_text(document: Mapping[str, Any]) -> str:
    """Return an indented plain-text rendering of ``document``.

    States are written as ket expansions.

    Returns
    -------
    str
        Text with a trailing newline.
    """
    return '\n'.join(_render_text_lines(document, 0)) + '\n'


def render(document: Mapping[str, Any], output_format: str) -> str:
    """Render ``document`` as ``json`` or ``text``.

    Returns
    -------
    str
        Rendered document.
    """
    if output_format == 'json':
        return render_json(document)
    if output_format == 'text':
        return render_text(document)
    raise ValueError(f'Unknown output format {output_format!r}')
