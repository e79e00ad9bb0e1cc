//! Learning definite logic programs from examples by generating candidates,
//! testing them and turning every failure into constraints that prune the
//! remaining search space. Predicate symbols absent from the background
//! knowledge are invented when they make a program smaller.

pub mod bench;
pub mod bias;
pub mod constraints;
pub mod generator;
pub mod interp;
pub mod learner;
pub mod logic;
pub mod syntax;
pub mod task;
pub mod term;
