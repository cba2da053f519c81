//! Slow, independent reference implementations for tests. Nothing here shares
//! code with the `torimax` crate: faces come from Fourier-Motzkin
//! elimination, volumes from counting lattice points, and real roots from
//! Descartes' rule of signs with bisection.

pub mod faces;
pub mod lattice_count;
pub mod maps;
pub mod roots;
