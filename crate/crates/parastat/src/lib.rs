pub mod cgc;
pub mod error;
pub mod fock;
pub mod gz;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod radical;
pub mod stability;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockSpace, Letter, Sign, State};
pub use gz::{Pattern, Row};
pub use radical::Radical;
