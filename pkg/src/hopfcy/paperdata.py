"""Embedded worked examples.

Each entry is a complete config file in the documented format; the CLI's
regression command and the test suite both load them through the ordinary
parser, so the examples double as end-to-end fixtures.  Nothing here is
fetched from outside the package.
"""

from __future__ import annotations

CONFIGS: dict[str, str] = {}

CONFIGS["sl2-plane"] = """\
title = "quantum sl2 acting on the quantum plane"

[datum]
params = ["q"]
rank = 1
cartan = "A1xA1"
g = [[1], [1]]
chi = [[[2]], [[-2]]]

[datum.linking]
"1 2" = "1/(q - q^-1)"

[action]
gldim = 2
variables = ["u", "v"]
q = "q"
eig = [[[1]], [[-1]]]
skew = [
    [["0", "0"], ["1", "0"]],
    [["0", "q"], ["0", "0"]],
]
"""

CONFIGS["torus-polynomial"] = """\
title = "rank-two torus scaling the polynomial plane"

[datum]
params = ["q"]
rank = 2

[cocycle]
ratios = { "2 1" = [1] }

[action]
gldim = 2
variables = ["x1", "x2"]
q = "1"
eig = [[[1], [-1]], [[1], [-1]]]
"""

CONFIGS["linked-a2a2"] = """\
title = "two linked A2 blocks over q with an independent parameter u"

[datum]
params = ["q", "u"]
rank = 2
cartan = "A2xA2"
g = [[1, 0], [0, 1], [1, 0], [0, 1]]
chi = [
    [[2, 0], [-1, 0]],
    [[-1, 0], [2, 0]],
    [[-2, 0], [1, 0]],
    [[1, 0], [-2, 0]],
]

[datum.linking]
"1 3" = "1"
"2 4" = "1"

[cocycle]
ratios = { "2 1" = [0, 1] }
"""

CONFIGS["rank2-two-vertex"] = """\
title = "two unlinked vertices on a rank-two group, ratio q^3"

[datum]
params = ["q"]
rank = 2
cartan = "A1xA1"
g = [[1, 0], [0, 1]]
chi = [
    [[2], [-4]],
    [[4], [-2]],
]

[cocycle]
ratios = { "2 1" = [3] }
"""

CONFIGS["rank2-two-vertex-plane"] = """\
title = "two unlinked vertices acting on the q^2 quantum plane"

[datum]
params = ["q"]
rank = 2
cartan = "A1xA1"
g = [[1, 0], [0, 1]]
chi = [
    [[2], [-4]],
    [[4], [-2]],
]

[cocycle]
ratios = { "2 1" = [3] }

[action]
gldim = 2
variables = ["u", "v"]
q = "q^2"
eig = [[[-1], [2]], [[1], [-2]]]
certified = false
"""

# the deformed two-vertex datum transcribed with its printed linking value;
# the characters no longer multiply to the trivial one on the linked pair,
# so strict validation must reject it
CONFIGS["rank2-two-vertex-primed"] = """\
title = "deformed two-vertex datum with an inconsistent linking value"

[datum]
params = ["q"]
rank = 2
cartan = "A1xA1"
g = [[1, 0], [0, 1]]
chi = [
    [[-2], [1]],
    [[-1], [2]],
]

[datum.linking]
"1 2" = "1/(q - 1)"
"""

CONFIGS["affine-3"] = """\
title = "quantum affine 3-space"

[datum]
params = ["q"]
rank = 1

[action]
gldim = 3
variables = ["u1", "u2", "u3"]
q = "q"
eig = [[[0]], [[0]], [[0]]]
"""

CONFIGS["quantum-plane"] = """\
title = "quantum plane"

[datum]
params = ["q"]
rank = 1

[action]
gldim = 2
variables = ["u", "v"]
q = "q"
eig = [[[0]], [[0]]]
"""


def config_text(key: str) -> str:
    try:
        return CONFIGS[key]
    except KeyError:
        raise KeyError(
            f"unknown embedded example {key!r}; available: {', '.join(sorted(CONFIGS))}"
        ) from None
