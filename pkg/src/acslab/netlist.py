"""Flat gate-netlist parsing and simulation.

Line-oriented grammar ('#' starts a comment, blank lines ignored):

    inputs a0 a1 ... b0 b1 ...
    <sig> = <GATE>(<sig>[, <sig>])      # one gate per line, topological order
    outputs s0 s1 ... sn

Input names bind positionally: the first half of the `inputs` list carries
operand A bit 0 upward, the second half operand B. Output names bind bit 0
upward as well. Signals must be defined before use and exactly once.
"""

import re
from dataclasses import dataclass

import numpy as np

from .errors import NetlistParseError

GATE_ARITY = {
    "AND": 2, "OR": 2, "XOR": 2, "NAND": 2, "NOR": 2, "XNOR": 2,
    "NOT": 1, "BUF": 1, "CONST0": 0, "CONST1": 0,
}

_GATE_RE = re.compile(r"^(\w+)\s*=\s*(\w+)\s*\(([^()]*)\)$")


@dataclass(frozen=True)
class Gate:
    out: str
    op: str
    ins: tuple


@dataclass(frozen=True)
class GateNetlist:
    inputs: tuple
    gates: tuple
    outputs: tuple

    def simulate(self, input_values, zero=0, one=1):
        """Evaluate all gates given per-input values (scalars or arrays).

        Returns the output values in declaration order. `zero`/`one` must be
        constants of the same type as the inputs (for CONST gates).
        """
        values = dict(zip(self.inputs, input_values))
        for g in self.gates:
            if g.op == "AND":
                v = values[g.ins[0]] & values[g.ins[1]]
            elif g.op == "OR":
                v = values[g.ins[0]] | values[g.ins[1]]
            elif g.op == "XOR":
                v = values[g.ins[0]] ^ values[g.ins[1]]
            elif g.op == "NAND":
                v = (values[g.ins[0]] & values[g.ins[1]]) ^ one
            elif g.op == "NOR":
                v = (values[g.ins[0]] | values[g.ins[1]]) ^ one
            elif g.op == "XNOR":
                v = (values[g.ins[0]] ^ values[g.ins[1]]) ^ one
            elif g.op == "NOT":
                v = values[g.ins[0]] ^ one
            elif g.op == "BUF":
                v = values[g.ins[0]]
            elif g.op == "CONST0":
                v = zero
            else:  # CONST1
                v = one
            values[g.out] = v
        return [values[name] for name in self.outputs]

    def evaluate_pair(self, a, b, width):
        """Scalar evaluation: operands -> integer output word."""
        bits = [(a >> i) & 1 for i in range(width)]
        bits += [(b >> i) & 1 for i in range(width)]
        out = self.simulate(bits)
        word = 0
        for j, v in enumerate(out):
            word |= (v & 1) << j
        return word

    def evaluate_many(self, a, b, width):
        """Vectorized evaluation over int64 operand arrays."""
        one = np.uint8(1)
        ins = [((a >> i) & 1).astype(np.uint8) for i in range(width)]
        ins += [((b >> i) & 1).astype(np.uint8) for i in range(width)]
        zero = np.zeros(len(a), dtype=np.uint8)
        out = self.simulate(ins, zero=zero, one=one)
        word = np.zeros(len(a), dtype=np.int64)
        for j, v in enumerate(out):
            word |= v.astype(np.int64) << j
        return word


def parse_netlist(text):
    """Parse gate-list text into a GateNetlist.

    Raises NetlistParseError (with the offending 1-based line number) on any
    grammar or consistency violation.
    """
    inputs = None
    outputs = None
    gates = []
    defined = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if outputs is not None:
            raise NetlistParseError("content after outputs line", lineno)
        if inputs is None:
            if not line.startswith("inputs"):
                raise NetlistParseError("expected inputs line first", lineno)
            names = line.split()[1:]
            if not names:
                raise NetlistParseError("empty inputs list", lineno)
            if len(set(names)) != len(names):
                raise NetlistParseError("duplicate input name", lineno)
            inputs = tuple(names)
            defined.update(names)
            continue
        if line.startswith("outputs"):
            names = line.split()[1:]
            if not names:
                raise NetlistParseError("empty outputs list", lineno)
            for name in names:
                if name not in defined:
                    raise NetlistParseError(f"undefined output signal '{name}'", lineno)
            outputs = tuple(names)
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise NetlistParseError("malformed gate statement", lineno)
        out, op, argstr = m.group(1), m.group(2), m.group(3)
        if op not in GATE_ARITY:
            raise NetlistParseError(f"unknown gate '{op}'", lineno)
        args = tuple(s.strip() for s in argstr.split(",")) if argstr.strip() else ()
        if len(args) != GATE_ARITY[op]:
            raise NetlistParseError(
                f"{op} takes {GATE_ARITY[op]} input(s), got {len(args)}", lineno)
        for name in args:
            if name not in defined:
                raise NetlistParseError(f"undefined signal '{name}'", lineno)
        if out in defined:
            raise NetlistParseError(f"duplicate definition of '{out}'", lineno)
        defined.add(out)
        gates.append(Gate(out, op, args))
    if inputs is None:
        raise NetlistParseError("missing inputs line")
    if outputs is None:
        raise NetlistParseError("missing outputs line")
    return GateNetlist(inputs, tuple(gates), outputs)


def ripple_carry_text(width):
    """Text of an exact ripple-carry adder netlist (reference circuit)."""
    lines = [f"# exact {width}-bit ripple-carry adder"]
    lines.append("inputs " + " ".join(
        [f"a{i}" for i in range(width)] + [f"b{i}" for i in range(width)]))
    lines.append("s0 = XOR(a0, b0)")
    lines.append("c1 = AND(a0, b0)")
    for i in range(1, width):
        lines.append(f"x{i} = XOR(a{i}, b{i})")
        lines.append(f"s{i} = XOR(x{i}, c{i})")
        lines.append(f"t{i} = AND(a{i}, b{i})")
        lines.append(f"u{i} = AND(x{i}, c{i})")
        lines.append(f"c{i + 1} = OR(t{i}, u{i})")
    lines.append(f"s{width} = BUF(c{width})")
    lines.append("outputs " + " ".join(f"s{j}" for j in range(width + 1)))
    return "\n".join(lines) + "\n"


def lower_or_text(width, k):
    """Text of a lower-OR adder netlist: low k bits ORed, one AND-derived
    carry into an exact upper ripple section."""
    if k == 0:
        return ripple_carry_text(width)
    lines = [f"# {width}-bit lower-OR adder, k={k}"]
    lines.append("inputs " + " ".join(
        [f"a{i}" for i in range(width)] + [f"b{i}" for i in range(width)]))
    for i in range(k):
        lines.append(f"s{i} = OR(a{i}, b{i})")
    lines.append(f"c{k} = AND(a{k - 1}, b{k - 1})")
    for i in range(k, width):
        lines.append(f"x{i} = XOR(a{i}, b{i})")
        lines.append(f"s{i} = XOR(x{i}, c{i})")
        lines.append(f"t{i} = AND(a{i}, b{i})")
        lines.append(f"u{i} = AND(x{i}, c{i})")
        lines.append(f"c{i + 1} = OR(t{i}, u{i})")
    lines.append(f"s{width} = BUF(c{width})")
    lines.append("outputs " + " ".join(f"s{j}" for j in range(width + 1)))
    return "\n".join(lines) + "\n"
