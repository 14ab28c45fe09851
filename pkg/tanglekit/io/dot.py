"""Graphviz DOT export."""

from tanglekit.machine.model import Machine


def _quote(text: str) -> str:
    return '"{}"'.format(text.replace("\\", "\\\\").replace('"', '\\"'))


def _label(m: Machine, register: str) -> str:
    lines = [register]
    color = m.color(register)
    if color is not None:
        lines.append(str(color))
    agent = m.agent_map.get(register)
    if agent is not None:
        lines.append(agent.op.code)
    return "\\n".join(line.replace("\\", "\\\\").replace('"', '\\"') for line in lines)


def export_dot(m: Machine, name: str = "machine") -> str:
    """
    Render ``m`` as a DOT digraph.

    Registers are boxes labelled with their id, colour and operation. Process edges are solid;
    every patient edge gets a dashed, bold link from its agent to the edge's output register,
    labelled with the input register. The output only depends on the machine.
    """
    lines = ["digraph {} {{".format(_quote(name)), "  rankdir=LR;", "  node [shape=box];"]

    for register in m.registers:
        lines.append('  {} [label="{}"];'.format(_quote(register), _label(m, register)))

    for v, w in m.edges:
        lines.append("  {} -> {};".format(_quote(v), _quote(w)))

    for agent in m.agents:
        for patient in agent.patients:
            lines.append(
                '  {} -> {} [style="dashed,bold", label={}];'.format(
                    _quote(agent.register), _quote(patient.output), _quote(patient.input)
                )
            )

    lines.append("}")
    return "\n".join(lines) + "\n"
