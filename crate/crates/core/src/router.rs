//! Seeded baseline SWAP-insertion router and its semantic verifier.
//!
//! The router is deliberately simple: it walks the gate list in order, and
//! whenever a CNOT's mapped qubits are not adjacent it picks one shortest
//! path between them (seeded uniform choice among the enumerated paths) and
//! walks the control-side wire along it with SWAPs until the pair touches.
//! No lookahead, no back-swapping, no final layout restoration — placement
//! quality has to show up directly in the SWAP count.

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::coupling::{CouplingGraph, DistanceMatrix};
use crate::placement::PartialPlacement;
use crate::rng::SplitMix64;

/// Cap on how many shortest paths are enumerated per CNOT before the
/// seeded draw; enumeration order is deterministic (lowest neighbor first).
pub const SHORTEST_PATH_CAP: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RouteError {
    #[error("wire {wire} is unplaced; routing needs a fully placed initial placement")]
    UnplacedWire { wire: usize },
    #[error("placement uses qubit {qubit} but the architecture has {count} qubits")]
    QubitOutOfRange { qubit: usize, count: usize },
    #[error("circuit has {wires} wires but the architecture only {qubits} qubits")]
    Capacity { wires: usize, qubits: usize },
}

/// Bidirectional wire/qubit correspondence, kept consistent under SWAPs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    wire_to_qubit: Vec<usize>,
    qubit_to_wire: Vec<Option<usize>>,
}

impl Layout {
    /// Builds from a fully placed placement over `qubit_count` qubits.
    pub fn from_placement(
        placement: &PartialPlacement,
        qubit_count: usize,
    ) -> Result<Self, RouteError> {
        if placement.wire_count() > qubit_count {
            return Err(RouteError::Capacity {
                wires: placement.wire_count(),
                qubits: qubit_count,
            });
        }
        let mut wire_to_qubit = Vec::with_capacity(placement.wire_count());
        let mut qubit_to_wire = vec![None; qubit_count];
        for wire in 0..placement.wire_count() {
            let qubit = placement
                .qubit_of(wire)
                .ok_or(RouteError::UnplacedWire { wire })?;
            if qubit >= qubit_count {
                return Err(RouteError::QubitOutOfRange {
                    qubit,
                    count: qubit_count,
                });
            }
            wire_to_qubit.push(qubit);
            qubit_to_wire[qubit] = Some(wire);
        }
        Ok(Self {
            wire_to_qubit,
            qubit_to_wire,
        })
    }

    pub fn qubit_of(&self, wire: usize) -> usize {
        self.wire_to_qubit[wire]
    }

    pub fn wire_at(&self, qubit: usize) -> Option<usize> {
        self.qubit_to_wire[qubit]
    }

    pub fn wire_to_qubit(&self) -> &[usize] {
        &self.wire_to_qubit
    }

    /// Exchanges the occupants of two hardware qubits (either may be empty).
    pub fn swap_qubits(&mut self, a: usize, b: usize) {
        self.qubit_to_wire.swap(a, b);
        if let Some(wire) = self.qubit_to_wire[a] {
            self.wire_to_qubit[wire] = a;
        }
        if let Some(wire) = self.qubit_to_wire[b] {
            self.wire_to_qubit[wire] = b;
        }
    }
}

/// A routed circuit on hardware qubits. SWAPs are already materialized as
/// their 3-CNOT + 4-Hadamard decomposition, so `cost` is both the plain
/// gate cost of `circuit` and the input cost plus 34 per SWAP.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedResult {
    pub circuit: Circuit,
    pub swap_count: usize,
    pub cost: u64,
    pub final_layout: Layout,
}

/// Per-CNOT routing record from [`route_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnotRouting {
    pub cnot_index: usize,
    /// Hop distance between the mapped qubits when the CNOT was handled.
    pub distance: usize,
    pub swaps: usize,
}

/// All shortest paths from `u` to `v`, in deterministic order (depth-first,
/// lowest neighbor first), truncated at `cap`.
pub fn enumerate_shortest_paths(
    graph: &CouplingGraph,
    dm: &DistanceMatrix,
    u: usize,
    v: usize,
    cap: usize,
) -> Vec<Vec<usize>> {
    let mut paths = Vec::new();
    let mut prefix = vec![u];
    descend(graph, dm, v, cap, &mut prefix, &mut paths);
    paths
}

fn descend(
    graph: &CouplingGraph,
    dm: &DistanceMatrix,
    goal: usize,
    cap: usize,
    prefix: &mut Vec<usize>,
    paths: &mut Vec<Vec<usize>>,
) {
    if paths.len() >= cap {
        return;
    }
    let here = *prefix.last().unwrap();
    if here == goal {
        paths.push(prefix.clone());
        return;
    }
    for &next in graph.neighbors(here) {
        if dm.dist(next, goal) + 1 == dm.dist(here, goal) {
            prefix.push(next);
            descend(graph, dm, goal, cap, prefix, paths);
            prefix.pop();
            if paths.len() >= cap {
                return;
            }
        }
    }
}

fn push_swap(gates: &mut Vec<Gate>, a: usize, b: usize) {
    gates.push(Gate::Cnot {
        control: a,
        target: b,
    });
    gates.push(Gate::H(a));
    gates.push(Gate::H(b));
    gates.push(Gate::Cnot {
        control: a,
        target: b,
    });
    gates.push(Gate::H(a));
    gates.push(Gate::H(b));
    gates.push(Gate::Cnot {
        control: a,
        target: b,
    });
}

/// Recognizes the exact 7-gate SWAP block emitted by the router starting at
/// `gates[0]`, returning the swapped qubit pair.
fn match_swap_block(gates: &[Gate]) -> Option<(usize, usize)> {
    if gates.len() < 7 {
        return None;
    }
    let (a, b) = match gates[0] {
        Gate::Cnot { control, target } => (control, target),
        _ => return None,
    };
    let expected = [
        Gate::Cnot {
            control: a,
            target: b,
        },
        Gate::H(a),
        Gate::H(b),
        Gate::Cnot {
            control: a,
            target: b,
        },
        Gate::H(a),
        Gate::H(b),
        Gate::Cnot {
            control: a,
            target: b,
        },
    ];
    if gates[..7] == expected {
        Some((a, b))
    } else {
        None
    }
}

/// Routes a circuit onto the architecture starting from a fully placed
/// initial placement. Deterministic for fixed inputs and seed; different
/// seeds may differ only in which shortest paths the SWAPs follow.
pub fn route(
    circuit: &Circuit,
    initial: &PartialPlacement,
    graph: &CouplingGraph,
    dm: &DistanceMatrix,
    seed: u64,
) -> Result<RoutedResult, RouteError> {
    route_traced(circuit, initial, graph, dm, seed).map(|(result, _)| result)
}

/// Same as [`route`], additionally reporting per-CNOT distance and SWAP
/// counts at the moment each CNOT was handled.
pub fn route_traced(
    circuit: &Circuit,
    initial: &PartialPlacement,
    graph: &CouplingGraph,
    dm: &DistanceMatrix,
    seed: u64,
) -> Result<(RoutedResult, Vec<CnotRouting>), RouteError> {
    let mut layout = Layout::from_placement(initial, graph.qubit_count())?;
    let mut rng = SplitMix64::new(seed);
    let mut gates = Vec::with_capacity(circuit.gates().len());
    let mut swap_count = 0usize;
    let mut trace = Vec::new();
    let mut cnot_index = 0usize;
    for gate in circuit.gates() {
        match *gate {
            Gate::H(w) => gates.push(Gate::H(layout.qubit_of(w))),
            Gate::X(w) => gates.push(Gate::X(layout.qubit_of(w))),
            Gate::Rz { wire, angle } => gates.push(Gate::Rz {
                wire: layout.qubit_of(wire),
                angle,
            }),
            Gate::Cnot { control, target } => {
                let qc = layout.qubit_of(control);
                let qt = layout.qubit_of(target);
                let distance = dm.dist(qc, qt);
                if distance > 1 {
                    let paths = enumerate_shortest_paths(graph, dm, qc, qt, SHORTEST_PATH_CAP);
                    let pick = rng.next_below(paths.len() as u64) as usize;
                    let path = &paths[pick];
                    // Walk the control-side wire up to the last vertex
                    // before the target; dist - 1 SWAPs in total.
                    for step in 0..path.len() - 2 {
                        let (a, b) = (path[step], path[step + 1]);
                        push_swap(&mut gates, a, b);
                        layout.swap_qubits(a, b);
                        swap_count += 1;
                    }
                }
                gates.push(Gate::Cnot {
                    control: layout.qubit_of(control),
                    target: layout.qubit_of(target),
                });
                trace.push(CnotRouting {
                    cnot_index,
                    distance,
                    swaps: distance - 1,
                });
                cnot_index += 1;
            }
        }
    }
    let routed = Circuit::new(graph.qubit_count(), gates).expect("routed gates are valid");
    let cost = routed.cost();
    debug_assert_eq!(cost, circuit.cost() + 34 * swap_count as u64);
    Ok((
        RoutedResult {
            circuit: routed,
            swap_count,
            cost,
            final_layout: layout,
        },
        trace,
    ))
}

/// Replays a routed circuit against the original: every recognized SWAP
/// block becomes a layout transposition, every other gate is mapped back to
/// logical wires through the evolving layout. Returns true iff the
/// recovered logical gate sequence equals the original circuit's.
pub fn verify_semantics(
    original: &Circuit,
    result: &RoutedResult,
    initial: &PartialPlacement,
) -> bool {
    let qubit_count = result.circuit.wire_count();
    let Ok(mut layout) = Layout::from_placement(initial, qubit_count) else {
        return false;
    };
    let routed = result.circuit.gates();
    let mut recovered = Vec::with_capacity(original.gates().len());
    let mut i = 0;
    while i < routed.len() {
        if let Some((a, b)) = match_swap_block(&routed[i..]) {
            layout.swap_qubits(a, b);
            i += 7;
            continue;
        }
        let logical = match routed[i] {
            Gate::H(q) => layout.wire_at(q).map(Gate::H),
            Gate::X(q) => layout.wire_at(q).map(Gate::X),
            Gate::Rz { wire: q, angle } => layout.wire_at(q).map(|wire| Gate::Rz { wire, angle }),
            Gate::Cnot { control, target } => layout.wire_at(control).and_then(|c| {
                layout.wire_at(target).map(|t| Gate::Cnot {
                    control: c,
                    target: t,
                })
            }),
        };
        match logical {
            Some(gate) => recovered.push(gate),
            None => return false, // gate on an unoccupied qubit
        }
        i += 1;
    }
    recovered == original.gates()
}
