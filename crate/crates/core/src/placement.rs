//! Partial placements, the approximate SWAP-cost model, and the greedy
//! placement search.
//!
//! A placement assigns circuit wires to hardware qubits. The cost model
//! scores a (partial) placement without running a router: it walks the
//! circuit's CNOTs in program order, estimates how many SWAPs each active
//! CNOT would need from the precomputed distances, and tracks the drift
//! those SWAPs cause through a per-qubit offset register. The greedy search
//! then builds a full placement one hardware qubit at a time, keeping the
//! candidates this score prefers.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};
use thiserror::Error;

use crate::circuit::{Circuit, Cnot};
use crate::coupling::{CouplingGraph, DistanceMatrix};

/// Scalar used for cost arithmetic. Implemented by `f32` and `f64`; the
/// crate-level [`crate::Cost`] alias picks the default.
pub trait CostScalar: Float + FromPrimitive + Debug {}
impl<T: Float + FromPrimitive + Debug> CostScalar for T {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlacementError {
    #[error("hardware qubit {qubit} assigned to more than one wire")]
    DuplicateQubit { qubit: usize },
    #[error("hardware qubit {qubit} out of range (architecture has {count} qubits)")]
    QubitOutOfRange { qubit: usize, count: usize },
    #[error("placement has {slots} slots but the circuit has {wires} wires")]
    WireCountMismatch { slots: usize, wires: usize },
    #[error("circuit has {wires} wires but the architecture only {qubits} qubits")]
    Capacity { wires: usize, qubits: usize },
    #[error("invalid placement entry `{token}`")]
    Parse { token: String },
    #[error("placement is empty")]
    Empty,
}

/// Injective map from circuit wires to hardware qubits; `None` marks an
/// unplaced wire. Slot `k` holds wire `k`'s qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPlacement {
    slots: Vec<Option<usize>>,
}

impl PartialPlacement {
    /// All wires unplaced.
    pub fn unplaced(wire_count: usize) -> Self {
        Self {
            slots: vec![None; wire_count],
        }
    }

    /// The trivial placement: wire `k` on hardware qubit `k`.
    pub fn trivial(wire_count: usize) -> Self {
        Self {
            slots: (0..wire_count).map(Some).collect(),
        }
    }

    /// Builds from raw slots, enforcing injectivity.
    pub fn from_slots(slots: Vec<Option<usize>>) -> Result<Self, PlacementError> {
        let mut seen = std::collections::BTreeSet::new();
        for qubit in slots.iter().flatten() {
            if !seen.insert(*qubit) {
                return Err(PlacementError::DuplicateQubit { qubit: *qubit });
            }
        }
        Ok(Self { slots })
    }

    pub fn wire_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    pub fn qubit_of(&self, wire: usize) -> Option<usize> {
        self.slots[wire]
    }

    pub fn placed_count(&self) -> usize {
        self.slots.iter().flatten().count()
    }

    pub fn is_fully_placed(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// Assigns `wire` to `qubit`, rejecting double assignment on either side.
    pub fn place(&mut self, wire: usize, qubit: usize) -> Result<(), PlacementError> {
        if self.slots.iter().flatten().any(|&q| q == qubit) {
            return Err(PlacementError::DuplicateQubit { qubit });
        }
        self.slots[wire] = Some(qubit);
        Ok(())
    }

    /// Checks every placed qubit against the architecture size.
    pub fn validate_for(&self, qubit_count: usize) -> Result<(), PlacementError> {
        for &qubit in self.slots.iter().flatten() {
            if qubit >= qubit_count {
                return Err(PlacementError::QubitOutOfRange {
                    qubit,
                    count: qubit_count,
                });
            }
        }
        Ok(())
    }

    /// Parses the single-line placement format: comma-separated hardware
    /// qubit indices, position `k` holding wire `k`'s qubit, `-` for an
    /// unplaced wire. Blank lines and `#` comment lines are ignored.
    pub fn parse(text: &str) -> Result<Self, PlacementError> {
        let line = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .ok_or(PlacementError::Empty)?;
        let mut slots = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            if token == "-" {
                slots.push(None);
            } else {
                let qubit = token.parse().map_err(|_| PlacementError::Parse {
                    token: token.to_string(),
                })?;
                slots.push(Some(qubit));
            }
        }
        Self::from_slots(slots)
    }

    /// Serializes to the single-line placement format.
    pub fn to_line(&self) -> String {
        self.slots
            .iter()
            .map(|slot| match slot {
                Some(q) => q.to_string(),
                None => "-".to_string(),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The trivial placement `[0, 1, ..., wires-1]`.
pub fn trivial_placement(wires: usize) -> PartialPlacement {
    PartialPlacement::trivial(wires)
}

/// Per-hardware-qubit signed displacement, reset to zero at the start of
/// every cost evaluation. Tracks where wires are expected to have drifted
/// after the SWAPs estimated so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetRegister {
    offsets: Vec<i64>,
}

impl OffsetRegister {
    pub fn new(qubit_count: usize) -> Self {
        Self {
            offsets: vec![0; qubit_count],
        }
    }

    pub fn get(&self, qubit: usize) -> i64 {
        self.offsets[qubit]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.offsets
    }

    pub fn sum(&self) -> i64 {
        self.offsets.iter().sum()
    }
}

/// Result of one cost evaluation. `cost` is `err / active_cnots` when any
/// CNOT is active and positive infinity otherwise, so placements that
/// activate nothing always lose to ones that activate something.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown<T> {
    /// Attenuation-weighted sum of estimated SWAP counts.
    pub err: T,
    /// CNOTs whose both wires are placed.
    pub active_cnots: usize,
    pub cost: T,
}

/// Knobs for the greedy search and the cost model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on how many equal-minimum-cost children a search node may
    /// expand, and on the frontier surviving each search level.
    pub max_children: usize,
    /// When set, the frontier collapses to its single best node the first
    /// time it reaches this depth (number of placed wires).
    pub cutoff_depth: Option<usize>,
    /// Weight CNOTs by position (earlier CNOTs count more) instead of
    /// uniformly.
    pub attenuation_enabled: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_children: 4,
            cutoff_depth: None,
            attenuation_enabled: true,
        }
    }
}

/// Number of CNOTs whose control and target wires are both placed — the
/// CNOTs that survive in the sub-circuit induced by deleting unplaced wires.
pub fn active_cnots(circuit: &Circuit, placement: &PartialPlacement) -> usize {
    assert_eq!(
        placement.wire_count(),
        circuit.wire_count(),
        "placement and circuit wire counts must match"
    );
    circuit
        .cnots()
        .iter()
        .filter(|cn| {
            placement.qubit_of(cn.control).is_some() && placement.qubit_of(cn.target).is_some()
        })
        .count()
}

/// Linear position weight for the CNOT at `index` out of `cnot_count`:
/// `(cnot_count - index) / cnot_count`, so the first CNOT weighs 1 and the
/// weight decays towards 0 along the gate list.
pub fn attenuation<T: CostScalar>(index: usize, cnot_count: usize) -> T {
    assert!(index < cnot_count, "CNOT index out of range");
    let count = T::from_usize(cnot_count).expect("count fits the scalar");
    let idx = T::from_usize(index).expect("index fits the scalar");
    (count - idx) / count
}

/// Estimated SWAP count for one CNOT under the current placement and
/// offsets, updating the offsets in place.
///
/// The effective distance is the hop count between the mapped qubits plus
/// both qubits' offsets, clamped below at 1. The estimate is that distance
/// minus one (adjacent qubits need no SWAP). Both endpoints are assumed to
/// move toward each other `m = floor(d / 2)` steps; when `m > 0` the
/// lower-indexed qubit's offset grows by `m - 1` and the higher-indexed
/// one's shrinks by `m`.
///
/// Panics if either wire of the CNOT is unplaced.
pub fn estimate_swaps(
    cnot: &Cnot,
    placement: &PartialPlacement,
    dm: &DistanceMatrix,
    offsets: &mut OffsetRegister,
) -> usize {
    let qc = placement
        .qubit_of(cnot.control)
        .expect("control wire must be placed");
    let qt = placement
        .qubit_of(cnot.target)
        .expect("target wire must be placed");
    let base = dm.dist(qc, qt) as i64;
    let d = (base + offsets.get(qc) + offsets.get(qt)).max(1);
    let m = d / 2;
    if m > 0 {
        let lo = qc.min(qt);
        let hi = qc.max(qt);
        offsets.offsets[lo] += m - 1;
        offsets.offsets[hi] -= m;
    }
    (d - 1) as usize
}

/// Per-CNOT record emitted by [`evaluate_cost_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnotTrace {
    pub cnot_index: usize,
    pub swaps: usize,
    /// Sum of all offsets after this CNOT was processed.
    pub offset_sum: i64,
}

fn evaluate_cost_inner<T: CostScalar>(
    cnots: &[Cnot],
    cnot_count: usize,
    placement: &PartialPlacement,
    dm: &DistanceMatrix,
    config: &SearchConfig,
    mut observer: impl FnMut(&Cnot, usize, &OffsetRegister),
) -> CostBreakdown<T> {
    let mut offsets = OffsetRegister::new(dm.qubit_count());
    let mut err = T::zero();
    let mut active = 0usize;
    for cnot in cnots {
        if placement.qubit_of(cnot.control).is_none() || placement.qubit_of(cnot.target).is_none()
        {
            continue;
        }
        let swaps = estimate_swaps(cnot, placement, dm, &mut offsets);
        let weight = if config.attenuation_enabled {
            attenuation::<T>(cnot.index, cnot_count)
        } else {
            T::one()
        };
        err = err + weight * T::from_usize(swaps).expect("swap count fits the scalar");
        active += 1;
        observer(cnot, swaps, &offsets);
    }
    let cost = if active > 0 {
        err / T::from_usize(active).expect("active count fits the scalar")
    } else {
        T::infinity()
    };
    CostBreakdown {
        err,
        active_cnots: active,
        cost,
    }
}

/// Scores a placement: walks the CNOTs in program order with a fresh
/// offset register, skips CNOTs with an unplaced wire, and accumulates the
/// (optionally attenuation-weighted) SWAP estimates.
pub fn evaluate_cost<T: CostScalar>(
    circuit: &Circuit,
    placement: &PartialPlacement,
    dm: &DistanceMatrix,
    config: &SearchConfig,
) -> CostBreakdown<T> {
    assert_eq!(
        placement.wire_count(),
        circuit.wire_count(),
        "placement and circuit wire counts must match"
    );
    placement
        .validate_for(dm.qubit_count())
        .expect("placement must fit the architecture");
    let cnots = circuit.cnots();
    evaluate_cost_inner(&cnots, cnots.len(), placement, dm, config, |_, _, _| {})
}

/// Same as [`evaluate_cost`], additionally reporting one [`CnotTrace`] per
/// processed CNOT for diagnostics and invariant checks.
pub fn evaluate_cost_traced<T: CostScalar>(
    circuit: &Circuit,
    placement: &PartialPlacement,
    dm: &DistanceMatrix,
    config: &SearchConfig,
) -> (CostBreakdown<T>, Vec<CnotTrace>) {
    assert_eq!(placement.wire_count(), circuit.wire_count());
    placement
        .validate_for(dm.qubit_count())
        .expect("placement must fit the architecture");
    let cnots = circuit.cnots();
    let mut trace = Vec::new();
    let breakdown = evaluate_cost_inner(
        &cnots,
        cnots.len(),
        placement,
        dm,
        config,
        |cnot, swaps, offsets| {
            trace.push(CnotTrace {
                cnot_index: cnot.index,
                swaps,
                offset_sum: offsets.sum(),
            });
        },
    );
    (breakdown, trace)
}

struct SearchNode<T> {
    placement: PartialPlacement,
    cost: T,
}

/// Greedy placement search, one hardware qubit after the other.
///
/// Level `k` assigns some still-unplaced wire to hardware qubit `k`. Every
/// unplaced wire is scored by [`evaluate_cost`] on the extended partial
/// placement; a node expands only the candidates achieving that node's
/// minimum cost, at most `max_children` of them, in wire order. The same
/// bound caps the surviving frontier after each level (stable order, so
/// equal costs keep their generation order), which keeps the explored tree
/// at `wires * max_children` nodes even when whole levels tie — as they do
/// on hardware qubit 0, where every wire scores the sentinel cost and the
/// first branch therefore starts from wire 0. With `cutoff_depth` set, the
/// frontier collapses to its single best node when it first reaches that
/// depth. The result is the cheapest fully-placed leaf the search saw, with
/// earlier-generated leaves winning ties, so the whole procedure is
/// deterministic.
pub fn greedy_place<T: CostScalar>(
    circuit: &Circuit,
    graph: &CouplingGraph,
    dm: &DistanceMatrix,
    config: &SearchConfig,
) -> Result<PartialPlacement, PlacementError> {
    assert_eq!(
        graph.qubit_count(),
        dm.qubit_count(),
        "graph and distance matrix must agree"
    );
    let wires = circuit.wire_count();
    if wires > graph.qubit_count() {
        return Err(PlacementError::Capacity {
            wires,
            qubits: graph.qubit_count(),
        });
    }
    assert!(config.max_children >= 1, "max_children must be positive");
    let cnots = circuit.cnots();
    let cnot_count = cnots.len();
    let score = |placement: &PartialPlacement| -> T {
        evaluate_cost_inner(&cnots, cnot_count, placement, dm, config, |_, _, _| {}).cost
    };

    let mut frontier = vec![SearchNode {
        placement: PartialPlacement::unplaced(wires),
        cost: T::infinity(),
    }];
    for hardware_qubit in 0..wires {
        let mut next = Vec::new();
        for node in &frontier {
            let mut candidates: Vec<(T, usize, PartialPlacement)> = Vec::new();
            for wire in 0..wires {
                if node.placement.qubit_of(wire).is_some() {
                    continue;
                }
                let mut extended = node.placement.clone();
                extended.slots[wire] = Some(hardware_qubit);
                let cost = score(&extended);
                candidates.push((cost, wire, extended));
            }
            candidates.sort_by(|a, b| {
                a.0.partial_cmp(&b.0)
                    .expect("cost is never NaN")
                    .then(a.1.cmp(&b.1))
            });
            let best = candidates[0].0;
            next.extend(
                candidates
                    .into_iter()
                    .take_while(|(cost, _, _)| *cost == best)
                    .take(config.max_children)
                    .map(|(cost, _, placement)| SearchNode { placement, cost }),
            );
        }
        next.sort_by(|a, b| a.cost.partial_cmp(&b.cost).expect("cost is never NaN"));
        next.truncate(config.max_children);
        if config.cutoff_depth == Some(hardware_qubit + 1) && next.len() > 1 {
            next.truncate(1);
        }
        frontier = next;
    }
    let best = frontier
        .into_iter()
        .min_by(|a, b| a.cost.partial_cmp(&b.cost).expect("cost is never NaN"))
        .expect("search always keeps at least one node");
    debug_assert!(best.placement.is_fully_placed());
    Ok(best.placement)
}
