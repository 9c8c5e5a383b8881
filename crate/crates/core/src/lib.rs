//! Exact-arithmetic Lanczos tau-method for linear ODEs with polynomial
//! coefficients and a regular singular point at the origin.
//!
//! Everything in this crate is computed over the rationals; there is no
//! floating point anywhere on the solve path.

pub mod basis;
pub mod linalg;
pub mod ode;
pub mod parser;
pub mod polynomial;
pub mod tau;

pub use basis::{build_discrepancy, chebyshev_t, interval_map, AffineMap, BasisError, BasisId};
pub use linalg::{solve_linear_system, LinearSystem, SolveError};
pub use ode::{taylor_coeff_equations, taylor_reference, DiffOperator, IvpProblem, OdeError};
pub use parser::{parse_problem, parse_problem_file, parse_poly, render_poly, ParseDiagnostic, ProblemFile, ProblemSource, RenderStyle};
pub use polynomial::{Assignment, Coefficient, LinForm, Poly, PolyError, Polynomial, Rational, SymPoly};
pub use tau::{residual_check, tau_solve, tau_trace, TauError, TauParams, TauSolution, TauTrace};
