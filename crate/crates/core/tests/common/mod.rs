//! Test-only oracles and generators shared by the integration suites.
//!
//! The oracles deliberately use different algorithms from the library so a
//! shared bug cannot make both sides agree.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use hqa_core::qasm::{parse_qasm, InstructionKind, QuantumCircuit};
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
}

pub fn fixture_text(rel: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn load_circuit(rel: &str) -> QuantumCircuit {
    parse_qasm(&fixture_text(rel), rel).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// The five reference circuits, by fixture file name.
pub const REFERENCE_CIRCUITS: &[&str] = &[
    "circuits/bell.qasm",
    "circuits/ghz3.qasm",
    "circuits/qft4.qasm",
    "circuits/grover3.qasm",
    "circuits/teleportation.qasm",
];

// ---------------------------------------------------------------------------
// Depth oracle: longest weighted path in the explicit dependency DAG.

/// Resources an instruction occupies, as (is_clbit, global index) pairs.
fn resources(circuit: &QuantumCircuit, idx: usize) -> BTreeSet<(bool, usize)> {
    let inst = &circuit.instructions[idx];
    let mut set = BTreeSet::new();
    for q in &inst.qubit_operands {
        set.insert((false, circuit.qubit_index(q).expect("qubit in range")));
    }
    for c in &inst.clbit_operands {
        set.insert((true, circuit.clbit_index(c).expect("clbit in range")));
    }
    if let Some(cond) = &inst.condition {
        let mut offset = 0;
        for reg in &circuit.clbit_registers {
            if reg.name == cond.register {
                for i in 0..reg.size {
                    set.insert((true, offset + i));
                }
            }
            offset += reg.size;
        }
    }
    set
}

/// Builds every edge i -> j (i < j) between instructions that share a
/// resource, then takes the heaviest path where barriers weigh zero.
pub fn oracle_depth(circuit: &QuantumCircuit) -> usize {
    let n = circuit.instructions.len();
    let res: Vec<_> = (0..n).map(|i| resources(circuit, i)).collect();
    let weight = |i: usize| match circuit.instructions[i].kind {
        InstructionKind::Barrier => 0,
        _ => 1,
    };
    let mut successors = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if !res[i].is_disjoint(&res[j]) {
                successors[i].push(j);
            }
        }
    }
    // Heaviest path starting at each node, filled back to front.
    let mut longest = vec![0usize; n];
    for i in (0..n).rev() {
        let tail = successors[i].iter().map(|&j| longest[j]).max().unwrap_or(0);
        longest[i] = weight(i) + tail;
    }
    longest.into_iter().max().unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Duplicate oracle: direct pairwise window comparison, no hashing.

fn windows_equal(a: &[String], i: usize, b: &[String], j: usize, k: usize) -> bool {
    (0..k).all(|t| a[i + t] == b[j + t])
}

/// For each stream, the fraction of positions inside some length-`k`
/// window that also appears at another (stream, offset) location.
pub fn oracle_duplicate_ratios(streams: &[Vec<String>], k: usize) -> Vec<f64> {
    streams
        .iter()
        .enumerate()
        .map(|(f, stream)| {
            if stream.len() < k {
                return 0.0;
            }
            let mut covered = 0usize;
            for p in 0..stream.len() {
                let first = p.saturating_sub(k - 1);
                let last = p.min(stream.len() - k);
                let dup = (first..=last).any(|s| {
                    streams.iter().enumerate().any(|(g, other)| {
                        other.len() >= k
                            && (0..=other.len() - k)
                                .any(|t| (g, t) != (f, s) && windows_equal(stream, s, other, t, k))
                    })
                });
                if dup {
                    covered += 1;
                }
            }
            covered as f64 / stream.len() as f64
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Random circuit source.

const ONE_QUBIT: &[&str] = &["h", "x", "y", "z", "s", "t", "sdg"];
const TWO_QUBIT: &[&str] = &["cx", "cz", "swap"];

fn distinct<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// A syntactically valid OpenQASM 2.0 program over two quantum and two
/// classical registers, mixing gates, measurements, resets, barriers and
/// conditionals.
pub fn random_qasm<R: Rng>(rng: &mut R, max_ops: usize) -> String {
    let qa = rng.gen_range(1..=4usize);
    let qb = rng.gen_range(1..=3usize);
    let ca = rng.gen_range(1..=3usize);
    let cb = rng.gen_range(1..=2usize);
    let nq = qa + qb;
    let qubit = |i: usize| {
        if i < qa {
            format!("q[{i}]")
        } else {
            format!("anc[{}]", i - qa)
        }
    };
    let clbit = |i: usize| {
        if i < ca {
            format!("c[{i}]")
        } else {
            format!("m[{}]", i - ca)
        }
    };
    let mut src = format!(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{qa}];\nqreg anc[{qb}];\ncreg c[{ca}];\ncreg m[{cb}];\n"
    );
    let ops = rng.gen_range(0..=max_ops);
    for _ in 0..ops {
        let prefix = if rng.gen_bool(0.15) {
            let (reg, size) = if rng.gen_bool(0.5) {
                ("c", ca)
            } else {
                ("m", cb)
            };
            format!("if({reg}=={}) ", rng.gen_range(0..(1u64 << size)))
        } else {
            String::new()
        };
        let line = match rng.gen_range(0..10) {
            0..=3 => format!(
                "{} {}",
                ONE_QUBIT[rng.gen_range(0..ONE_QUBIT.len())],
                qubit(rng.gen_range(0..nq))
            ),
            4 if nq >= 2 => {
                let qs = distinct(rng, nq, 2);
                format!(
                    "{} {},{}",
                    TWO_QUBIT[rng.gen_range(0..TWO_QUBIT.len())],
                    qubit(qs[0]),
                    qubit(qs[1])
                )
            }
            5 if nq >= 3 => {
                let qs = distinct(rng, nq, 3);
                format!("ccx {},{},{}", qubit(qs[0]), qubit(qs[1]), qubit(qs[2]))
            }
            6 => format!(
                "rz({:.3}) {}",
                rng.gen_range(-3.0..3.0f64),
                qubit(rng.gen_range(0..nq))
            ),
            7 => format!(
                "measure {} -> {}",
                qubit(rng.gen_range(0..nq)),
                clbit(rng.gen_range(0..ca + cb))
            ),
            8 => format!("reset {}", qubit(rng.gen_range(0..nq))),
            _ if prefix.is_empty() => {
                let k = rng.gen_range(1..=nq);
                let qs: Vec<String> = distinct(rng, nq, k).into_iter().map(qubit).collect();
                format!("barrier {}", qs.join(","))
            }
            _ => format!("x {}", qubit(rng.gen_range(0..nq))),
        };
        src.push_str(&prefix);
        src.push_str(&line);
        src.push_str(";\n");
    }
    src
}

/// A small Python-style module with a few branching functions.
pub fn random_python<R: Rng>(rng: &mut R) -> String {
    let mut src = String::from("import math\n\n");
    for f in 0..rng.gen_range(1..=4) {
        src.push_str(&format!("\ndef f{f}(xs, k):\n"));
        if rng.gen_bool(0.5) {
            src.push_str("    \"\"\"Docstring.\"\"\"\n");
        }
        src.push_str("    acc = 0\n");
        for _ in 0..rng.gen_range(0..6) {
            match rng.gen_range(0..5) {
                0 => src.push_str("    for x in xs:\n        acc += x\n"),
                1 => src.push_str("    if k > 1 and acc < 10:\n        acc -= 1\n"),
                2 => src.push_str("    # adjust\n    acc = acc * 2\n"),
                3 => src.push_str("    while acc > 100:\n        acc //= 2\n"),
                _ => src.push_str("    acc = math.floor(acc + 0.5)\n"),
            }
        }
        src.push_str("    return acc\n");
    }
    src
}
