/// Gates available in every program.
pub const BUILTIN_GATES: &[(&str, usize, usize)] = &[("U", 3, 1), ("CX", 0, 2)];

/// Gates brought in by `include "qelib1.inc";` as `(name, params, qubits)`.
pub const QELIB1_GATES: &[(&str, usize, usize)] = &[
    ("u3", 3, 1),
    ("u2", 2, 1),
    ("u1", 1, 1),
    ("u0", 1, 1),
    ("u", 3, 1),
    ("p", 1, 1),
    ("cx", 0, 2),
    ("id", 0, 1),
    ("x", 0, 1),
    ("y", 0, 1),
    ("z", 0, 1),
    ("h", 0, 1),
    ("s", 0, 1),
    ("sdg", 0, 1),
    ("t", 0, 1),
    ("tdg", 0, 1),
    ("sx", 0, 1),
    ("sxdg", 0, 1),
    ("rx", 1, 1),
    ("ry", 1, 1),
    ("rz", 1, 1),
    ("cz", 0, 2),
    ("cy", 0, 2),
    ("ch", 0, 2),
    ("csx", 0, 2),
    ("swap", 0, 2),
    ("crx", 1, 2),
    ("cry", 1, 2),
    ("crz", 1, 2),
    ("cu1", 1, 2),
    ("cp", 1, 2),
    ("cu3", 3, 2),
    ("cu", 4, 2),
    ("rxx", 1, 2),
    ("rzz", 1, 2),
    ("ccx", 0, 3),
    ("cswap", 0, 3),
    ("rccx", 0, 3),
    ("rc3x", 0, 4),
    ("c3x", 0, 4),
    ("c3sqrtx", 0, 4),
    ("c4x", 0, 5),
];

pub fn lookup(name: &str, with_qelib1: bool) -> Option<(usize, usize)> {
    BUILTIN_GATES
        .iter()
        .chain(if with_qelib1 { QELIB1_GATES } else { &[] })
        .find(|(n, _, _)| *n == name)
        .map(|&(_, p, q)| (p, q))
}
