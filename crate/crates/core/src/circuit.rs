//! Circuit intermediate representation, text formats, generators, and the
//! gate cost model.
//!
//! The IR is a flat, ordered gate list over logical wires. Two text formats
//! are understood: a line-oriented gate list (the native format) and a small
//! OpenQASM subset, auto-detected by a leading `OPENQASM` token.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use thiserror::Error;

use crate::rng::SplitMix64;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown gate `{gate}`")]
    UnknownGate { line: usize, gate: String },
    #[error("line {line}: wire {wire} out of range (circuit has {wires} wires)")]
    WireOutOfRange {
        line: usize,
        wire: usize,
        wires: usize,
    },
    #[error("line {line}: CNOT control and target must differ")]
    DuplicateCnotOperands { line: usize },
    #[error("missing `qubits N` header line")]
    MissingHeader,
    #[error("wire count must be positive")]
    NoWires,
}

/// One gate of the IR. CNOT is the only two-wire kind; every other kind
/// acts on a single wire.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    H(usize),
    X(usize),
    Rz { wire: usize, angle: f64 },
}

impl Gate {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::H(w) | Gate::X(w) | Gate::Rz { wire: w, .. } => vec![w],
        }
    }

    /// Gate cost: CNOT 10, Z-axis rotation 0, any other single-qubit gate 1.
    pub fn cost(&self) -> u64 {
        match self {
            Gate::Cnot { .. } => 10,
            Gate::Rz { .. } => 0,
            Gate::H(_) | Gate::X(_) => 1,
        }
    }
}

/// A CNOT occurrence: `index` is its 0-based position among the circuit's
/// CNOTs in program order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cnot {
    pub index: usize,
    pub control: usize,
    pub target: usize,
}

/// Ordered gate list over `wire_count` logical wires. Immutable once built;
/// wires declared but never operated on are legal and remain placeable.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    wire_count: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(wire_count: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        if wire_count == 0 {
            return Err(CircuitError::NoWires);
        }
        for gate in &gates {
            if let Gate::Cnot { control, target } = gate {
                if control == target {
                    return Err(CircuitError::DuplicateCnotOperands { line: 0 });
                }
            }
            for wire in gate.wires() {
                if wire >= wire_count {
                    return Err(CircuitError::WireOutOfRange {
                        line: 0,
                        wire,
                        wires: wire_count,
                    });
                }
            }
        }
        Ok(Self { wire_count, gates })
    }

    pub fn wire_count(&self) -> usize {
        self.wire_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// CNOTs in program order, with their positional index among CNOTs.
    pub fn cnots(&self) -> Vec<Cnot> {
        self.gates
            .iter()
            .filter_map(|g| match *g {
                Gate::Cnot { control, target } => Some((control, target)),
                _ => None,
            })
            .enumerate()
            .map(|(index, (control, target))| Cnot {
                index,
                control,
                target,
            })
            .collect()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }

    /// Total gate cost of the circuit under the fixed per-kind costs.
    pub fn cost(&self) -> u64 {
        self.gates.iter().map(Gate::cost).sum()
    }

    /// Parses either supported text format; a leading `OPENQASM` token
    /// selects the QASM subset, anything else the gate-list format.
    pub fn parse(text: &str) -> Result<Self, CircuitError> {
        if text.trim_start().starts_with("OPENQASM") {
            parse_qasm(text)
        } else {
            parse_gate_list(text)
        }
    }

    /// Serializes to the gate-list format; `parse` reproduces the circuit
    /// exactly (angles are printed with shortest round-trip precision).
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.wire_count);
        for gate in &self.gates {
            match gate {
                Gate::Cnot { control, target } => {
                    let _ = writeln!(out, "cx {control} {target}");
                }
                Gate::H(w) => {
                    let _ = writeln!(out, "h {w}");
                }
                Gate::X(w) => {
                    let _ = writeln!(out, "x {w}");
                }
                Gate::Rz { wire, angle } => {
                    let _ = writeln!(out, "rz {wire} {angle}");
                }
            }
        }
        out
    }

    /// Deterministic random circuit: `depth` layers, each built by
    /// shuffling the wires (Fisher-Yates over [`SplitMix64`]) and consuming
    /// the pool left to right — with probability 1/2 the next two wires form
    /// a CNOT, otherwise one wire receives a single-qubit gate drawn
    /// uniformly from {H, X, RZ(uniform angle in [0, 2pi))}.
    pub fn random(wires: usize, depth: usize, seed: u64) -> Self {
        assert!(wires >= 2, "random circuits need at least 2 wires");
        assert!(depth >= 1, "depth must be positive");
        let mut rng = SplitMix64::new(seed);
        let mut gates = Vec::new();
        for _ in 0..depth {
            let mut pool: Vec<usize> = (0..wires).collect();
            rng.shuffle(&mut pool);
            let mut idx = 0;
            while idx < pool.len() {
                let remaining = pool.len() - idx;
                if remaining >= 2 && rng.next_below(2) == 0 {
                    gates.push(Gate::Cnot {
                        control: pool[idx],
                        target: pool[idx + 1],
                    });
                    idx += 2;
                } else {
                    let wire = pool[idx];
                    idx += 1;
                    match rng.next_below(3) {
                        0 => gates.push(Gate::H(wire)),
                        1 => gates.push(Gate::X(wire)),
                        _ => gates.push(Gate::Rz {
                            wire,
                            angle: rng.next_f64() * TAU,
                        }),
                    }
                }
            }
        }
        Self { wire_count: wires, gates }
    }

    /// Quantum Fourier transform over `wires` wires: per wire one Hadamard,
    /// then a controlled phase to every later wire, each expanded as
    /// 2 CNOTs + 3 RZ. The final wire reversal is a relabeling and adds no
    /// gates, so the CNOT count is exactly `wires * (wires - 1)`.
    pub fn qft(wires: usize) -> Self {
        assert!(wires >= 1, "qft needs at least 1 wire");
        let mut gates = Vec::new();
        for target in 0..wires {
            gates.push(Gate::H(target));
            for control in target + 1..wires {
                let theta = std::f64::consts::PI / (1u64 << (control - target)) as f64;
                gates.push(Gate::Rz {
                    wire: control,
                    angle: theta / 2.0,
                });
                gates.push(Gate::Cnot { control, target });
                gates.push(Gate::Rz {
                    wire: target,
                    angle: -theta / 2.0,
                });
                gates.push(Gate::Cnot { control, target });
                gates.push(Gate::Rz {
                    wire: target,
                    angle: theta / 2.0,
                });
            }
        }
        Self { wire_count: wires, gates }
    }
}

fn parse_wire(token: &str, line: usize, wires: usize) -> Result<usize, CircuitError> {
    let wire: usize = token.parse().map_err(|_| CircuitError::Syntax {
        line,
        message: format!("expected a wire index, got `{token}`"),
    })?;
    if wire >= wires {
        return Err(CircuitError::WireOutOfRange { line, wire, wires });
    }
    Ok(wire)
}

fn parse_gate_list(text: &str) -> Result<Circuit, CircuitError> {
    let mut wire_count: Option<usize> = None;
    let mut gates = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let Some(wires) = wire_count else {
            if tokens[0] != "qubits" || tokens.len() != 2 {
                return Err(CircuitError::MissingHeader);
            }
            let n: usize = tokens[1].parse().map_err(|_| CircuitError::Syntax {
                line,
                message: format!("expected a wire count, got `{}`", tokens[1]),
            })?;
            if n == 0 {
                return Err(CircuitError::NoWires);
            }
            wire_count = Some(n);
            continue;
        };
        let arity_err = |expected: &str| CircuitError::Syntax {
            line,
            message: format!("expected `{expected}`"),
        };
        match tokens[0] {
            "cx" => {
                if tokens.len() != 3 {
                    return Err(arity_err("cx C T"));
                }
                let control = parse_wire(tokens[1], line, wires)?;
                let target = parse_wire(tokens[2], line, wires)?;
                if control == target {
                    return Err(CircuitError::DuplicateCnotOperands { line });
                }
                gates.push(Gate::Cnot { control, target });
            }
            "h" => {
                if tokens.len() != 2 {
                    return Err(arity_err("h Q"));
                }
                gates.push(Gate::H(parse_wire(tokens[1], line, wires)?));
            }
            "x" => {
                if tokens.len() != 2 {
                    return Err(arity_err("x Q"));
                }
                gates.push(Gate::X(parse_wire(tokens[1], line, wires)?));
            }
            "rz" => {
                if tokens.len() != 3 {
                    return Err(arity_err("rz Q ANGLE"));
                }
                let wire = parse_wire(tokens[1], line, wires)?;
                let angle: f64 = tokens[2].parse().map_err(|_| CircuitError::Syntax {
                    line,
                    message: format!("expected an angle in radians, got `{}`", tokens[2]),
                })?;
                gates.push(Gate::Rz { wire, angle });
            }
            other => {
                return Err(CircuitError::UnknownGate {
                    line,
                    gate: other.to_string(),
                });
            }
        }
    }
    let wires = wire_count.ok_or(CircuitError::MissingHeader)?;
    Ok(Circuit {
        wire_count: wires,
        gates,
    })
}

/// Statements of the QASM subset, with the line each begins on.
struct QasmStatement {
    line: usize,
    text: String,
}

/// Strips `//` comments, then splits on `;`. Any non-whitespace text after
/// the final `;` is an error (unterminated statement).
fn qasm_statements(text: &str) -> Result<Vec<QasmStatement>, CircuitError> {
    let mut cleaned = String::with_capacity(text.len());
    for raw_line in text.lines() {
        let content = match raw_line.find("//") {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        cleaned.push_str(content);
        cleaned.push('\n');
    }
    let mut statements = Vec::new();
    let mut line = 1;
    let mut start_line = 1;
    let mut current = String::new();
    for ch in cleaned.chars() {
        match ch {
            ';' => {
                statements.push(QasmStatement {
                    line: start_line,
                    text: std::mem::take(&mut current),
                });
                start_line = line;
            }
            '\n' => {
                line += 1;
                if current.trim().is_empty() {
                    current.clear();
                    start_line = line;
                } else {
                    current.push(' ');
                }
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        return Err(CircuitError::Syntax {
            line: start_line,
            message: "statement not terminated by `;`".into(),
        });
    }
    statements.retain(|s| !s.text.trim().is_empty());
    Ok(statements)
}

/// Parses `name[index]` against the declared register.
fn parse_qasm_operand(
    token: &str,
    line: usize,
    register: &str,
    wires: usize,
) -> Result<usize, CircuitError> {
    let inner = token
        .strip_prefix(register)
        .and_then(|rest| rest.strip_prefix('['))
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| CircuitError::Syntax {
            line,
            message: format!("expected `{register}[i]`, got `{token}`"),
        })?;
    parse_wire(inner, line, wires)
}

/// OpenQASM subset: a version line, a single `qreg`, and only the gates
/// `cx`, `h`, `x`, `rz`. Anything else — `include`, `creg`, `measure`,
/// `barrier`, unknown gates — is a parse error rather than being skipped,
/// so no gate can silently vanish from a cost comparison.
fn parse_qasm(text: &str) -> Result<Circuit, CircuitError> {
    let statements = qasm_statements(text)?;
    let mut register: Option<(String, usize)> = None;
    let mut gates = Vec::new();
    let mut first = true;
    for stmt in &statements {
        let line = stmt.line;
        let tokens: Vec<String> = stmt
            .text
            .replace(',', " ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if first {
            if tokens.len() != 2 || tokens[0] != "OPENQASM" {
                return Err(CircuitError::Syntax {
                    line,
                    message: "expected `OPENQASM <version>;` as the first statement".into(),
                });
            }
            first = false;
            continue;
        }
        let head = tokens[0].as_str();
        if head == "qreg" {
            if register.is_some() {
                return Err(CircuitError::Syntax {
                    line,
                    message: "only a single `qreg` is supported".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(CircuitError::Syntax {
                    line,
                    message: "expected `qreg name[N];`".into(),
                });
            }
            let (name, size) = tokens[1]
                .split_once('[')
                .and_then(|(name, rest)| {
                    rest.strip_suffix(']').map(|size| (name.to_string(), size))
                })
                .and_then(|(name, size)| size.parse::<usize>().ok().map(|n| (name, n)))
                .ok_or_else(|| CircuitError::Syntax {
                    line,
                    message: "expected `qreg name[N];`".into(),
                })?;
            if size == 0 {
                return Err(CircuitError::NoWires);
            }
            register = Some((name, size));
            continue;
        }
        if head != "cx" && head != "h" && head != "x" && !head.starts_with("rz(") {
            return Err(CircuitError::UnknownGate {
                line,
                gate: head.to_string(),
            });
        }
        let (reg_name, wires) = register.as_ref().ok_or_else(|| CircuitError::Syntax {
            line,
            message: "gate before `qreg` declaration".into(),
        })?;
        match head {
            "cx" => {
                if tokens.len() != 3 {
                    return Err(CircuitError::Syntax {
                        line,
                        message: "expected `cx q[i], q[j];`".into(),
                    });
                }
                let control = parse_qasm_operand(&tokens[1], line, reg_name, *wires)?;
                let target = parse_qasm_operand(&tokens[2], line, reg_name, *wires)?;
                if control == target {
                    return Err(CircuitError::DuplicateCnotOperands { line });
                }
                gates.push(Gate::Cnot { control, target });
            }
            "h" | "x" => {
                if tokens.len() != 2 {
                    return Err(CircuitError::Syntax {
                        line,
                        message: format!("expected `{head} q[i];`"),
                    });
                }
                let wire = parse_qasm_operand(&tokens[1], line, reg_name, *wires)?;
                gates.push(if head == "h" { Gate::H(wire) } else { Gate::X(wire) });
            }
            _ if head.starts_with("rz(") => {
                let angle_text = head
                    .strip_prefix("rz(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| CircuitError::Syntax {
                        line,
                        message: "expected `rz(angle) q[i];`".into(),
                    })?;
                let angle: f64 = angle_text.parse().map_err(|_| CircuitError::Syntax {
                    line,
                    message: format!("expected an angle in radians, got `{angle_text}`"),
                })?;
                if tokens.len() != 2 {
                    return Err(CircuitError::Syntax {
                        line,
                        message: "expected `rz(angle) q[i];`".into(),
                    });
                }
                let wire = parse_qasm_operand(&tokens[1], line, reg_name, *wires)?;
                gates.push(Gate::Rz { wire, angle });
            }
            other => {
                return Err(CircuitError::UnknownGate {
                    line,
                    gate: other.to_string(),
                });
            }
        }
    }
    let (_, wires) = register.ok_or(CircuitError::MissingHeader)?;
    Ok(Circuit {
        wire_count: wires,
        gates,
    })
}
