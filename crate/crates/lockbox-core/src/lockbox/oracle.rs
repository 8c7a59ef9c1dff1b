//! Breadth-first distance-to-solved oracle over the 2^N binary state space.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{LockboxSpec, MAX_ORACLE_JOINTS};

const UNREACHABLE: u32 = u32::MAX;

/// Minimal successful-toggle counts from every state to the nearest solved
/// state, for one spec. Toggling a joint never changes that joint's own
/// locking condition, so the transition relation is symmetric and a single
/// multi-source search from the solved states covers all starting states.
pub struct SolveDistances {
    dist: Vec<u32>,
    joint_count: usize,
}

impl SolveDistances {
    pub fn compute(spec: &LockboxSpec) -> SolveDistances {
        let n = spec.joint_count();
        assert!(
            n <= MAX_ORACLE_JOINTS,
            "state-space search supports at most {MAX_ORACLE_JOINTS} joints, got {n}"
        );
        // Index-compiled unlock conditions: per joint, (mask, want) so that
        // joint j is unlocked in `bits` iff bits & mask == want.
        let mut mask = alloc::vec![0u32; n];
        let mut want = alloc::vec![0u32; n];
        for edge in &spec.edges {
            let locker = spec
                .joint_index(&edge.locker)
                .expect("validated spec has no dangling edges");
            let locked = spec
                .joint_index(&edge.locked)
                .expect("validated spec has no dangling edges");
            mask[locked] |= 1 << locker;
            if edge.required_state {
                want[locked] |= 1 << locker;
            } else {
                // Contradictory duplicate edges (same pair, both values)
                // leave `want` bits cleared while `mask` keeps them set,
                // which correctly never matches together with a set bit.
                want[locked] &= !(1u32 << locker);
            }
        }
        let target = spec.target_index();
        let goal_bit = u32::from(spec.goal_state) << target;

        let states = 1usize << n;
        let mut dist = alloc::vec![UNREACHABLE; states];
        let mut queue = VecDeque::new();
        for bits in 0..states as u32 {
            if bits & (1 << target) == goal_bit {
                dist[bits as usize] = 0;
                queue.push_back(bits);
            }
        }
        while let Some(bits) = queue.pop_front() {
            let d = dist[bits as usize];
            for j in 0..n {
                if bits & mask[j] != want[j] {
                    continue; // locked
                }
                let next = bits ^ (1 << j);
                if dist[next as usize] == UNREACHABLE {
                    dist[next as usize] = d + 1;
                    queue.push_back(next);
                }
            }
        }
        SolveDistances {
            dist,
            joint_count: n,
        }
    }

    /// Steps to solve from the given bit pattern; `None` when unsolvable.
    pub fn steps_from(&self, bits: u32) -> Option<u32> {
        debug_assert!((bits as usize) < (1 << self.joint_count));
        match self.dist[bits as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{edge, fig2a, fig2b, joint};
    use super::super::{JointKind, LockboxSpec};

    #[test]
    fn solved_state_is_zero() {
        let spec = fig2a();
        let mut state = spec.initial_state();
        spec.manipulate(&mut state, &"A".into()).unwrap();
        spec.manipulate(&mut state, &"B".into()).unwrap();
        assert_eq!(spec.min_remaining_steps(&state), Some(0));
    }

    #[test]
    fn fig2a_needs_two_toggles() {
        let spec = fig2a();
        assert_eq!(spec.min_remaining_steps(&spec.initial_state()), Some(2));
    }

    #[test]
    fn fig2b_needs_three_toggles() {
        let spec = fig2b();
        assert_eq!(spec.min_remaining_steps(&spec.initial_state()), Some(3));
    }

    #[test]
    fn contradictory_edges_are_unsolvable() {
        let spec = LockboxSpec {
            name: "stuck".into(),
            joints: alloc::vec![
                joint("A", JointKind::Prismatic, [0.0, 0.0, 0.0]),
                joint("B", JointKind::Prismatic, [0.1, 0.0, 0.0]),
            ],
            edges: alloc::vec![edge("A", "B", true), edge("A", "B", false)],
            target: "B".into(),
            goal_state: true,
        };
        assert_eq!(spec.min_remaining_steps(&spec.initial_state()), None);
    }
}
