pub mod algebra;
pub mod blowup;
pub mod e8_limit;
pub mod error;
pub mod lax;
pub mod normalform;
pub mod qdiff;
pub mod runner;
