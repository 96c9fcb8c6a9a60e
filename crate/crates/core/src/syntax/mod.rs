//! Text and LaTeX front end.

pub mod latex;
pub mod lexer;
pub mod parser;
pub mod print;

pub use latex::{latex_matrix, latex_poly, latex_scalar, latex_sphere};
pub use parser::{parse_expr, parse_laurent, parse_poly, parse_scalar, parse_tensor};
pub use print::{print_exact, print_poly, print_scalar, print_sphere};
