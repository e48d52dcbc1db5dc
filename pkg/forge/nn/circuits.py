# -*- coding: utf-8 -*-
# Copyright (C) 2026 The forge developers
#
# This program is free software; you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free Software
# Foundation; version 3.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along with
# this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA

"""Boolean circuits over AND, OR, NOT and REPEAT gates and their compilation to threshold networks"""

from collections import namedtuple
from enum import unique, Enum
import logging
import numpy as np
from forge.nn import Layer, Network, THRESHOLD
from forge.tools import StructuralError, raise_logged

logger = logging.getLogger(__name__)


@unique
class GateKind(Enum):
    AND = "AND"
    OR = "OR"
    NOT = "NOT"
    REPEAT = "REPEAT"


class Gate(namedtuple('Gate', ['name', 'kind', 'inputs'])):
    """A named gate reading earlier signals"""

    def __new__(cls, name, kind, inputs):
        return super().__new__(cls, name, GateKind(kind), tuple(inputs))

    def encoding(self):
        """(weights, bias) of the perceptron realizing this gate on {0,1} inputs"""
        fan_in = len(self.inputs)
        if self.kind is GateKind.AND:
            return [1.0] * fan_in, float(fan_in)
        if self.kind is GateKind.OR:
            return [1.0] * fan_in, 1.0
        if self.kind is GateKind.NOT:
            return [-1.0], 0.0
        return [1.0], 1.0

    def evaluate(self, values):
        if self.kind is GateKind.AND:
            return int(all(values))
        if self.kind is GateKind.OR:
            return int(any(values))
        if self.kind is GateKind.NOT:
            return 1 - values[0]
        return values[0]


class BoolCircuit(object):
    """Gates listed in topological order over named Boolean inputs"""

    def __init__(self, inputs, gates, outputs):
        self.inputs = tuple(inputs)
        self.gates = tuple(gate if isinstance(gate, Gate) else Gate(*gate) for gate in gates)
        self.outputs = tuple(outputs)
        self._validate()

    def _validate(self):
        known = set()
        for name in self.inputs:
            if name in known:
                raise_logged(StructuralError, "Duplicated circuit input {}".format(name))
            known.add(name)
        for gate in self.gates:
            if gate.name in known:
                raise_logged(StructuralError, "Duplicated circuit signal {}".format(gate.name))
            if not gate.inputs:
                raise_logged(StructuralError, "Gate {} has no input".format(gate.name))
            if gate.kind in (GateKind.NOT, GateKind.REPEAT) and len(gate.inputs) != 1:
                raise_logged(StructuralError, "{} gate {} takes exactly one input".format(gate.kind.value, gate.name))
            for source in gate.inputs:
                # reading a later or unknown signal means the list isn't a topological order of a DAG
                if source not in known:
                    raise_logged(StructuralError, "Gate {} reads {} which isn't defined before it".format(
                        gate.name, source))
            known.add(gate.name)
        if not self.gates:
            raise_logged(StructuralError, "A circuit needs at least one gate")
        for name in self.outputs:
            if name not in known:
                raise_logged(StructuralError, "Unknown circuit output {}".format(name))

    def levels(self):
        """Depth of every signal, inputs being at level 0"""
        level = {name: 0 for name in self.inputs}
        for gate in self.gates:
            level[gate.name] = 1 + max(level[source] for source in gate.inputs)
        return level

    @property
    def depth(self):
        levels = self.levels()
        return max(max(levels[name] for name in self.outputs), 1)

    def evaluate(self, assignment):
        """Direct evaluation. assignment maps input names (or positions) to 0/1."""
        if not isinstance(assignment, dict):
            assignment = dict(zip(self.inputs, assignment))
        values = {name: int(bool(assignment[name])) for name in self.inputs}
        for gate in self.gates:
            values[gate.name] = gate.evaluate([values[source] for source in gate.inputs])
        return tuple(values[name] for name in self.outputs)


def compile_bool_circuit(circuit):
    """Threshold network of depth circuit.depth agreeing with circuit.evaluate on Boolean inputs

    Layer L holds the gates of level L plus REPEAT carriers for signals still needed later; the last layer
    lists the circuit outputs in order.
    """
    levels = circuit.levels()
    depth = circuit.depth
    by_name = {gate.name: gate for gate in circuit.gates}

    last_use = {}
    for gate in circuit.gates:
        for source in gate.inputs:
            last_use[source] = max(last_use.get(source, 0), levels[gate.name])
    for name in circuit.outputs:
        last_use[name] = depth + 1

    position = {name: index for index, name in enumerate(circuit.inputs)}
    layers = []
    for level in range(1, depth + 1):
        if level == depth:
            units = list(circuit.outputs)
        else:
            units = [gate.name for gate in circuit.gates if levels[gate.name] == level]
            units += [name for name in list(circuit.inputs) + [gate.name for gate in circuit.gates]
                      if levels[name] < level and last_use.get(name, 0) > level]
        weights = np.zeros((len(units), len(position)))
        bias = np.zeros(len(units))
        for row, name in enumerate(units):
            gate = by_name.get(name)
            if gate is not None and levels[name] == level:
                gate_weights, bias[row] = gate.encoding()
                for source, weight in zip(gate.inputs, gate_weights):
                    weights[row, position[source]] += weight
            else:
                # carrier: REPEAT of a signal computed earlier
                weights[row, position[name]] = 1.0
                bias[row] = 1.0
        layers.append(Layer(weights, bias, THRESHOLD))
        position = {}
        for index, name in enumerate(units):
            position.setdefault(name, index)
    logger.debug("Compiled circuit of {} gates into {} layers".format(len(circuit.gates), len(layers)))
    return Network(len(circuit.inputs), layers)
