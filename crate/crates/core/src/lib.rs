//! Exact computations for abelian GIT quotients `C^k // T`: classical and
//! quantum Stanley–Reisner presentations, inertia sectors, the small
//! I-function and the quantum differential operators that annihilate it.

pub mod error;
pub mod git;
pub mod groebner;
pub mod ifunction;
pub mod inertia;
pub mod linalg;
pub mod novikov;
pub mod poly;
pub mod qde;
pub mod qkirwan;
pub mod ring;
pub mod wire;

pub use error::{Error, Result};
pub use git::{GitData, Support};
pub use ifunction::{i_series, ISeries, ZetaElement};
pub use inertia::{enumerate_sectors, Sector};
pub use linalg::{IntMatrix, Rational};
pub use novikov::{NovikovDegree, NovikovSeries};
pub use poly::{Monomial, Poly};
pub use qde::{apply_box, check_annihilation, BoxOperator};
pub use qkirwan::{kirwan_leading, qsr_generator, QsrGenerator};
pub use ring::{build_presentation, normal_form, RingElement, RingPresentation};
