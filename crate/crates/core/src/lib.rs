//! Perfect play for Greedy Nim and k-Bounded Greedy Nim, in normal and
//! misère play.
//!
//! * [`classify`] decides the outcome of a position from a few heap
//!   statistics in time linear in the number of heaps.
//! * [`strategy`] generates moves and picks winning ones.
//! * [`oracle`] and [`sweep`] certify the closed form against exhaustive
//!   game-tree search.
//! * [`service`] and [`cli`] expose all of it over HTTP and the terminal.

pub mod classify;
pub mod cli;
pub mod error;
pub mod game;
pub mod oracle;
pub mod position;
pub mod predicates;
pub mod service;
pub mod strategy;
pub mod sweep;

pub use classify::{classify, is_singular, outcome, ClassificationDetail, MatchedClause};
pub use error::{NimError, Result};
pub use game::{GameSpec, Outcome, Play, Variant};
pub use position::Position;
pub use predicates::{alpha, beta, is_k_good, is_k_nice, is_stable_move, remainder};
pub use strategy::{apply_move, best_move, constructive_move, legal_moves, winning_moves, MoveChoice};
