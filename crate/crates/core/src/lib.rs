//! Quantum Fisher information of a damped tripartite Dirac state near a
//! Schwarzschild horizon.
//!
//! The library builds the GHZ-like resource state, dilates the infalling
//! mode over the Kruskal vacuum, traces out the interior region, pushes the
//! result through amplitude-damping-family channels (AD / GAD / SGAD), and
//! computes the quantum Fisher information with respect to the state's
//! weight and phase angles by two independent numerical routes, alongside
//! direct evaluation of the analytic closed forms.
//!
//! Module map:
//!
//! * [`linalg`] — dense complex matrices, Kronecker product, partial
//!   trace, Hermitian eigensolver;
//! * [`blackhole`] — Hawking temperature, Kruskal coefficients, the
//!   dilated state and its accessible density matrix;
//! * [`channels`] — Kraus families, thermal coefficients, channel
//!   application, the literal channel-acted matrix;
//! * [`qfi`] — finite-difference QFI (SLD route and three-term spectral
//!   route);
//! * [`closed_form`] — the analytic QFI expressions and eigenvalue triple;
//! * [`family`] — glue producing parameterised matrix families for the
//!   engine.

pub mod blackhole;
pub mod channels;
pub mod closed_form;
pub mod error;
pub mod family;
pub mod linalg;
pub mod qfi;

pub use error::{Error, Result};
pub use linalg::{eig_hermitian, kron, partial_trace, ComplexMatrix, EigenSystem};
