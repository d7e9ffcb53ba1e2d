//! Computations in finitely presented graded commutative algebras over small
//! finite fields: Gröbner bases, colon ideals and annihilators, Hilbert
//! functions, regularity of elements and sequences, and base change.

pub mod claims;
pub mod field;
pub mod fixtures;
pub mod graded;
pub mod groebner;
pub mod ideal;
pub mod presentation;
pub mod regseq;
pub mod ring;

pub use field::{Coeff, FieldElement, FieldError, FieldSpec};
pub use graded::{component_enumerate, hilbert_function, krull_dimension, standard_monomials, GradedError, HilbertTable};
pub use groebner::{buchberger, elimination_gb, normal_form, s_polynomial, GbError, GbOptions, GbStats, GroebnerBasis};
pub use ideal::{Annihilator, Ideal, IdealError, QuotientRing};
pub use presentation::{Diagnostic, DiagnosticKind, Metadata, Presentation, PresentationError};
pub use regseq::{RegSeqConfig, RegSeqError, RegularityTest, StrategyRegistry, Verdict};
pub use ring::{GeneratorSet, Monomial, MonomialOrder, OrderKind, ParseError, Polynomial, Ring, RingError, Term};
