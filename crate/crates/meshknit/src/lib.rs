//! Combinatorics of representation-finite selfinjective algebras of tree class A, D, E:
//! translation quivers ZT, mesh categories, configurations and their classification,
//! and quiver-with-relations presentations.

pub mod classification;
pub mod config;
pub mod dot;
pub mod dynkin;
pub mod error;
pub mod exec;
pub mod groups;
pub mod knitting;
pub mod linalg;
pub mod mesh;
pub mod parse;
pub mod presentations;
pub mod quiver;
pub mod reproduce;

pub use config::{Configuration, ZtAut};
pub use dynkin::{loewy_number, make_tree, tree_automorphisms, DynkinTree, Family, TreeAutomorphism};
pub use error::{Error, Result};
pub use exec::Exec;
pub use groups::{is_admissible, quotient, table_groups, AdmissibleGroup, FiniteQuiver, Twist};
pub use quiver::{build_window, plus_admissible_enumeration, section_move, tau_apply, Point, QuiverWindow, Section, StablePoint};
