//! Symbolic lockbox model.
//!
//! A lockbox is a set of binary joints tied together by an interlocking
//! dependency graph: a directed acyclic graph whose edges point from locking
//! joints to the joints they lock, each edge carrying the state the locker
//! must be in for the locked joint to move. The lockbox is solved when the
//! target joint reaches its goal end of travel.

mod generate;
mod oracle;

pub use generate::{generate_random, DependencyMix, GenerateError, GeneratorParams, WorkspaceBox};
pub use oracle::SolveDistances;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Largest joint count the breadth-first oracle will expand (2^N states).
pub const MAX_ORACLE_JOINTS: usize = 20;

/// Short unique joint label, e.g. `"A"`..`"G"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointId(pub String);

impl JointId {
    pub fn new(label: impl Into<String>) -> Self {
        JointId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for JointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for JointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JointId({})", self.0)
    }
}

impl From<&str> for JointId {
    fn from(s: &str) -> Self {
        JointId::new(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum JointKind {
    Prismatic,
    Revolute,
}

/// One joint of the puzzle: identity, mechanism kind, handle position in the
/// workspace (meters) and the binary state it starts in.
#[derive(Clone, Debug, PartialEq)]
pub struct JointSpec {
    pub id: JointId,
    pub kind: JointKind,
    pub handle_position: [f64; 3],
    pub initial_state: bool,
}

/// `locked` may only move while `locker` sits in `required_state`.
#[derive(Clone, Debug, PartialEq)]
pub struct DependencyEdge {
    pub locker: JointId,
    pub locked: JointId,
    pub required_state: bool,
}

/// A full puzzle definition. Immutable once validated; shared freely across
/// concurrent trials.
#[derive(Clone, Debug, PartialEq)]
pub struct LockboxSpec {
    pub name: String,
    pub joints: Vec<JointSpec>,
    pub edges: Vec<DependencyEdge>,
    pub target: JointId,
    pub goal_state: bool,
}

/// Structural problems reported by [`LockboxSpec::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    DuplicateJointId(JointId),
    UnknownTarget(JointId),
    DanglingEdgeEndpoint(JointId),
    SelfLockingEdge(JointId),
    DependencyCycle(Vec<JointId>),
    NonFiniteHandlePosition(JointId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateJointId(id) => write!(f, "duplicate joint id {id}"),
            Violation::UnknownTarget(id) => write!(f, "unknown target {id}"),
            Violation::DanglingEdgeEndpoint(id) => {
                write!(f, "edge references unknown joint {id}")
            }
            Violation::SelfLockingEdge(id) => write!(f, "joint {id} locks itself"),
            Violation::DependencyCycle(ids) => {
                write!(f, "dependency cycle among joints ")?;
                for (i, id) in ids.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{id}")?;
                }
                Ok(())
            }
            Violation::NonFiniteHandlePosition(id) => {
                write!(f, "non-finite handle position for joint {id}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LockboxError {
    UnknownJoint(JointId),
}

impl fmt::Display for LockboxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LockboxError::UnknownJoint(id) => write!(f, "unknown joint {id}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for LockboxError {}

/// Binary world state of one trial: joint bits (indexed by the spec's joint
/// order), the joint of the last manipulation *attempt* (successful or not)
/// and the number of attempts so far. Every attempt costs one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LockboxState {
    bits: u32,
    last_attempted: Option<usize>,
    step_count: u32,
}

impl LockboxState {
    /// Bit pattern as a raw mask (joint `i` of the spec at bit `i`).
    pub fn bit_mask(&self) -> u32 {
        self.bits
    }

    pub fn bit(&self, joint_index: usize) -> bool {
        self.bits >> joint_index & 1 == 1
    }

    /// Index of the joint attempted last, regardless of whether it moved.
    pub fn last_attempted(&self) -> Option<usize> {
        self.last_attempted
    }

    pub fn step_count(&self) -> u32 {
        self.step_count
    }

    pub(crate) fn from_mask(bits: u32) -> Self {
        LockboxState {
            bits,
            last_attempted: None,
            step_count: 0,
        }
    }

    /// Books one attempt; flips the bit only when the attempt moved.
    pub(crate) fn apply_attempt(&mut self, joint_index: usize, moved: bool) {
        self.step_count += 1;
        self.last_attempted = Some(joint_index);
        if moved {
            self.bits ^= 1 << joint_index;
        }
    }
}

impl LockboxSpec {
    /// Position of `id` in the joint declaration order.
    pub fn joint_index(&self, id: &JointId) -> Option<usize> {
        self.joints.iter().position(|j| &j.id == id)
    }

    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }

    pub fn target_index(&self) -> usize {
        self.joint_index(&self.target)
            .expect("validated spec has a known target")
    }

    /// Structural check: duplicate ids, dangling edge endpoints, self-locking
    /// edges, missing target, non-finite positions, dependency cycles.
    /// An empty result means the spec is well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for (i, joint) in self.joints.iter().enumerate() {
            if self.joints[..i].iter().any(|other| other.id == joint.id) {
                violations.push(Violation::DuplicateJointId(joint.id.clone()));
            }
            if joint.handle_position.iter().any(|c| !c.is_finite()) {
                violations.push(Violation::NonFiniteHandlePosition(joint.id.clone()));
            }
        }
        if self.joint_index(&self.target).is_none() {
            violations.push(Violation::UnknownTarget(self.target.clone()));
        }
        for edge in &self.edges {
            for endpoint in [&edge.locker, &edge.locked] {
                if self.joint_index(endpoint).is_none() {
                    violations.push(Violation::DanglingEdgeEndpoint(endpoint.clone()));
                }
            }
            if edge.locker == edge.locked {
                violations.push(Violation::SelfLockingEdge(edge.locker.clone()));
            }
        }
        if let Some(cycle) = self.find_cycle() {
            violations.push(Violation::DependencyCycle(cycle));
        }
        violations
    }

    /// Kahn's algorithm over well-formed edges; returns the joints left on a
    /// cycle, if any.
    fn find_cycle(&self) -> Option<Vec<JointId>> {
        let n = self.joints.len();
        let mut in_degree = alloc::vec![0usize; n];
        let mut successors: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for edge in &self.edges {
            let (Some(locker), Some(locked)) = (
                self.joint_index(&edge.locker),
                self.joint_index(&edge.locked),
            ) else {
                continue;
            };
            if locker == locked {
                continue;
            }
            successors[locker].push(locked);
            in_degree[locked] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| in_degree[i] == 0).collect();
        let mut removed = 0usize;
        while let Some(i) = ready.pop() {
            removed += 1;
            for &next in &successors[i] {
                in_degree[next] -= 1;
                if in_degree[next] == 0 {
                    ready.push(next);
                }
            }
        }
        if removed == n {
            None
        } else {
            let cycle: Vec<JointId> = (0..n)
                .filter(|&i| in_degree[i] > 0)
                .map(|i| self.joints[i].id.clone())
                .collect();
            Some(cycle)
        }
    }

    /// State with every joint at its declared initial position.
    pub fn initial_state(&self) -> LockboxState {
        let mut bits = 0u32;
        for (i, joint) in self.joints.iter().enumerate() {
            if joint.initial_state {
                bits |= 1 << i;
            }
        }
        LockboxState::from_mask(bits)
    }

    /// A joint may move iff every locking joint sits in the state its edge
    /// demands. No incoming edges means always unlocked.
    pub fn is_unlocked(&self, state: &LockboxState, id: &JointId) -> Result<bool, LockboxError> {
        let index = self
            .joint_index(id)
            .ok_or_else(|| LockboxError::UnknownJoint(id.clone()))?;
        Ok(self.is_unlocked_at(state.bits, index))
    }

    pub(crate) fn is_unlocked_at(&self, bits: u32, joint_index: usize) -> bool {
        let id = &self.joints[joint_index].id;
        self.edges.iter().filter(|e| &e.locked == id).all(|e| {
            let locker = self
                .joint_index(&e.locker)
                .expect("validated spec has no dangling edges");
            (bits >> locker & 1 == 1) == e.required_state
        })
    }

    /// One manipulation attempt. Costs a step whether or not the joint moves;
    /// toggles the bit and returns `true` only when the joint was unlocked.
    pub fn manipulate(&self, state: &mut LockboxState, id: &JointId) -> Result<bool, LockboxError> {
        let index = self
            .joint_index(id)
            .ok_or_else(|| LockboxError::UnknownJoint(id.clone()))?;
        let moved = self.is_unlocked_at(state.bits, index);
        state.apply_attempt(index, moved);
        Ok(moved)
    }

    pub fn is_solved(&self, state: &LockboxState) -> bool {
        state.bit(self.target_index()) == self.goal_state
    }

    /// Length of the shortest sequence of successful toggles that solves the
    /// lockbox, by breadth-first search over the 2^N state space. `None` when
    /// no such sequence exists. Failed attempts cost steps at trial time but
    /// do not count here: this is the informed optimum used for reward deltas.
    pub fn min_remaining_steps(&self, state: &LockboxState) -> Option<u32> {
        SolveDistances::compute(self).steps_from(state.bit_mask())
    }

    /// Permutes the labels of all non-target joints and re-sorts the joint
    /// list by label, so declaration order (and with it sweep order and any
    /// index-based encoding) varies while the physical structure, positions
    /// and target stay the same up to renaming.
    pub fn randomize_labels(&self, seed: u64) -> LockboxSpec {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let others: Vec<JointId> = self
            .joints
            .iter()
            .filter(|j| j.id != self.target)
            .map(|j| j.id.clone())
            .collect();
        let mut shuffled = others.clone();
        shuffled.shuffle(&mut rng);
        let rename = |id: &JointId| -> JointId {
            match others.iter().position(|o| o == id) {
                Some(i) => shuffled[i].clone(),
                None => id.clone(),
            }
        };
        let mut joints: Vec<JointSpec> = self
            .joints
            .iter()
            .map(|j| JointSpec {
                id: rename(&j.id),
                ..j.clone()
            })
            .collect();
        joints.sort_by(|a, b| a.id.cmp(&b.id));
        let edges = self
            .edges
            .iter()
            .map(|e| DependencyEdge {
                locker: rename(&e.locker),
                locked: rename(&e.locked),
                required_state: e.required_state,
            })
            .collect();
        LockboxSpec {
            name: self.name.clone(),
            joints,
            edges,
            target: self.target.clone(),
            goal_state: self.goal_state,
        }
    }
}
