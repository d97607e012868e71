//! Computational toolkit for the symmetric moment curve
//! `U_k(t) = (cos t, sin t, cos 3t, sin 3t, …, cos(2k-1)t, sin(2k-1)t)`
//! and its convex hull `B_k`.

pub mod circle;
pub mod critical_arc;
pub mod deformation;
pub mod error;
pub mod interpolation;
pub mod lp;
pub mod polytope;
pub mod repro;
pub mod roots;
pub mod trigpoly;

pub use circle::{Arc, CirclePoint};
pub use critical_arc::{critical_length, phi, CriticalArcResult, Split};
pub use deformation::{alpha_conjecture, beta, lambda_deform, RootPairing};
pub use error::{Error, Result};
pub use interpolation::{interpolate, is_face, FaceCertificate, FaceStatus, FaceVerdict, RootSpec};
pub use polytope::{count_faces, edge_check, embed, lp_face_oracle, CurvePoint, FaceCount, VertexConfig};
pub use roots::{circle_roots, sup_norm, CircleRoot};
pub use trigpoly::{ComplexPoly, RakedTrigPoly};
