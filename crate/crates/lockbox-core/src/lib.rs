//! Core library for the lockbox benchmark: the symbolic interlocked-joint
//! model with its breadth-first step oracle and instance generator, a
//! kinematic SE(3) simulation of grasped 1-DoF mechanisms with wrench-gated
//! trajectory interpolation, the human-inspired heuristic planner with an
//! online ridge-regression attention mechanism, and a small DQN baseline.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! experiment CLI live in the companion `lockbox-bench` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod learn;
pub mod lockbox;
pub mod plan;
pub mod sim;
