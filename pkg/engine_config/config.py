import json
import os
from dataclasses import dataclass

from whitefact.factor_groups import (
    CyclicGroup,
    FactorSystem,
    InfiniteCyclicGroup,
    TableGroup,
    derive_inverses,
    fg_validate,
)


class InvalidSystemException(Exception):
    def __init__(self, message):
        self.message = f'Invalid factor system: {message}'


class InvalidThreadCountException(Exception):
    def __init__(self, value):
        self.message = f'WHITEFACT_THREADS must be a non-negative integer, got {value!r}'


class InvalidFormatException(Exception):
    def __init__(self, output_format):
        self.message = f'Unknown output format {output_format!r}, expected one of {", ".join(formats)}'


formats = [
    'json',
    'dot',
    'text'
]

DEFAULT_SEED = 0


def _is_index(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _parse_factor(index: int, data: dict):
    kind = data.get('kind') if isinstance(data, dict) else None
    if kind == 'cyclic':
        order = data.get('order')
        if not _is_index(order):
            raise InvalidSystemException(f'factor {index} needs an integer order')
        return CyclicGroup(index, order)
    if kind == 'int':
        return InfiniteCyclicGroup(index)
    if kind == 'table':
        try:
            labels = tuple(str(label) for label in data['elements'])
            table = tuple(tuple(row) for row in data['table'])
            identity = data.get('identity', 0)
        except (KeyError, TypeError):
            raise InvalidSystemException(f'table factor {index} needs "elements" and "table"')
        if not all(_is_index(entry) for row in table for entry in row):
            raise InvalidSystemException(f'table factor {index} needs integer table entries')
        if not _is_index(identity):
            raise InvalidSystemException(f'table factor {index} needs an integer identity index')
        if 'inverse' not in data:
            return TableGroup(index, labels, table, identity, derive_inverses(table, identity))
        inverses = data['inverse']
        if not isinstance(inverses, list) or not all(_is_index(entry) for entry in inverses):
            raise InvalidSystemException(f'table factor {index} needs an integer inverse list')
        return TableGroup(index, labels, table, identity, tuple(inverses))
    raise InvalidSystemException(f'factor {index} has unknown kind {kind!r}')


def parse_system(data: dict) -> FactorSystem:
    """
    Build a factor system from its JSON description

    :param data: {"factors": [...]}
    :raises InvalidSystemException: if the description is malformed or a factor violates a group axiom
    :return: the factor system
    """
    if not isinstance(data, dict) or not isinstance(data.get('factors'), list):
        raise InvalidSystemException('"factors" list expected')
    if len(data['factors']) < 2:
        raise InvalidSystemException('at least two factors are required')
    system = FactorSystem(tuple(_parse_factor(index, factor)
                                for index, factor in enumerate(data['factors'], start=1)))
    for group in system.factors:
        violation = fg_validate(group)
        if violation is not None:
            raise InvalidSystemException(f'factor {group.index}: {violation}')
    return system


def load_system(path: str) -> FactorSystem:
    if not os.path.isfile(path):
        raise InvalidSystemException(f'{path} does not exist')
    with open(path) as file:
        try:
            data = json.load(file)
        except json.JSONDecodeError as e:
            raise InvalidSystemException(f'{path} is not valid JSON ({e.msg})')
    return parse_system(data)


def thread_count() -> int | None:
    value = os.environ.get('WHITEFACT_THREADS', '0')
    if not value.strip().isdigit():
        raise InvalidThreadCountException(value)
    return int(value) or None


@dataclass
class RunConfig:
    system_path: str | None
    command: str
    arguments: list[str]
    output_format: str = 'json'
    seed: int = DEFAULT_SEED

    def validate(self):
        if self.output_format not in formats:
            raise InvalidFormatException(self.output_format)
        if self.system_path is not None and not os.path.isfile(self.system_path):
            raise InvalidSystemException(f'{self.system_path} does not exist')
        return True
