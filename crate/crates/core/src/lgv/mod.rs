//! Weighted paths in the Fibonacci digraph and minors of the matrix whose
//! `(r, c)` entry is `F_{c-r}(xq^r, yq^r, q)`.

pub mod minor;
pub mod paths;

pub use minor::{
    ballot_check, cigler_identity, cigler_sides, closed_form_minor, euler_cassini_sides, matrix_entry, minor,
    reducible_at, tuple_methods_feasible, Ballot, CiglerCheck, ClosedForm, MinorMethod, ShiftedF,
};
pub use paths::{
    arc_weight, enumerate_paths, enumerate_tuples, signed_tuple_sum, tail_swap, DigraphPath, IndexSequences, PathTuple,
    TupleFilter,
};
