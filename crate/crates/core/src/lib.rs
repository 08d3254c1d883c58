pub mod coeff;
pub mod freemon;
pub mod linalg;
pub mod linearize;
pub mod ncalg;
pub mod par;
pub mod presentation;
pub mod suite;
