//! Multipartite no-signaling boxes, Svetlichny functionals, and
//! information-causality games.
//!
//! The crate models N-party binary boxes as dense conditional probability
//! tables, evaluates the Svetlichny functional in both its probability and
//! correlator forms, wires blocks of parties into effective bipartite
//! boxes, and plays information-causality games on the results. Everything
//! is an exact finite computation, so the classical (E > 1/2), quantum
//! (E = sqrt(2)/2), and algebraic (E = 1) thresholds of the isotropic box
//! family come out at machine precision.
//!
//! # Modules
//!
//! - [`boxes`] — box construction, validation, marginals, and sampling
//! - [`svetlichny`] — both functional forms and the exhaustive
//!   hybrid-local bound oracle
//! - [`wiring`] — merging party blocks and restricting inputs
//! - [`icgame`] — the tripartite guessing game, concatenated random-access
//!   codes, and IC-violation scans
//! - [`cli`] — the `nsbox` command-line front end
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```sh
//! cargo run --example isotropic_boxes
//! cargo run --example svetlichny_thresholds
//! cargo run --example hybrid_local_bound
//! cargo run --example tripartite_guess_game
//! cargo run --example merge_and_restrict
//! cargo run --example rac_concatenation
//! cargo run --example ic_threshold_scan
//! ```
//!
//! Quick taste:
//!
//! ```
//! use nsbox::{Bias, ConditionalBox};
//! use nsbox::svetlichny::evaluate;
//!
//! let b = ConditionalBox::isotropic(3, Bias::new(1.0)?)?;
//! let report = evaluate(&b);
//! assert_eq!(report.correlator_value, 8.0);
//! assert!(report.violates_hybrid_bound);
//! # Ok::<(), nsbox::Error>(())
//! ```

pub mod bits;
pub mod boxes;
pub mod cli;
pub mod error;
pub mod icgame;
pub mod svetlichny;
pub mod wiring;

mod numeric;

pub use boxes::{Bias, ConditionalBox, NoSignalingReport};
pub use error::{Error, Result};
