//! Set partitions, pattern avoidance, statistics and the bijections between
//! layered partitions, integer partitions and Fibonacci words.

pub mod bijections;
pub mod integer_partition;
pub mod partition;
pub mod pattern;
pub mod sequences;

pub use bijections::{
    complement, from_binary_seq, from_morse, omega, phi, phi_inv, shift, to_binary_seq, to_morse, ShiftedPartition,
    WeightMode,
};
pub use integer_partition::IntegerPartition;
pub use partition::{SetPartition, Stats};
pub use pattern::{
    avoids_all, contains_pattern, enumerate_avoiders, enumerate_avoiders_generic, find_copy, is_copy,
    layered_matchings, layered_partitions, AllPartitions, AvoidanceClass, Avoiders, PatternCopy,
};
pub use sequences::{BinarySeq, Morse, MorseSeq};
