//! Desk-scale toolkit for first-order spectra over structures whose binary
//! symbols are partial injective unary functions (PIFs), with bounded-degree
//! and planar search modes.
//!
//! The crate provides: formula syntax and evaluation ([`logic`]), finite
//! structures and Gaifman graphs ([`structure`]), planarity testing with
//! embedding witnesses ([`planarity`]), arithmetic example structures and
//! their axiom sentences ([`gens`], [`axioms`]), Turing and queue machine
//! trace encoders ([`machine`]), neighborhood-type censuses ([`hanf`]), the
//! degree-3 gadget transform and model search ([`search`]), and brute-force
//! enumeration ([`enumerate`]).

pub mod axioms;
pub mod enumerate;
pub mod gens;
pub mod hanf;
pub mod logic;
pub mod machine;
pub mod planarity;
pub mod search;
pub mod structure;
