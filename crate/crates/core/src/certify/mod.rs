//! Representation certificates and the algorithms that produce them.

mod cert;
mod ebf;
mod represent;

pub use cert::{RepresentationCertificate, Verification, CERTIFICATE_SCHEMA};
pub use ebf::{ebf_analyze, EbfReport, FactorReport};
pub use represent::{
    certificate_to_isotropy_witness, hyperbolic_pair, pad_certificate, represent_irreducible_1var, Representation,
    ResidueWitness,
};

pub fn verify_certificate(cert: &RepresentationCertificate) -> crate::Result<Verification> {
    cert.verify()
}
