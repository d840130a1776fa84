//! Information leaked to an eavesdropper by a collective translucent attack on the
//! two-state (B92) key distribution protocol.
//!
//! Eve attaches an independent probe to every transmitted particle, waits until Alice and
//! Bob have published their error-correction parities, and then measures all probes
//! jointly to learn the parity that forms the final key. Her two candidate density
//! matrices are block diagonal over the cosets of the announced parity strings, with a
//! pure state pair in every block, so the optimal information is a weighted sum of
//! two-state accessible informations.
//!
//! - [`gf2`]: bitstrings, spans, Hamming codes and the code file format
//! - [`attack`]: attack angles, error rates and reliability of single-error correction
//! - [`parity`]: parity density matrices and their block spectrum
//! - [`info`]: exact information, closed-form estimates and Hamming-code bounds
//! - [`catalog`]: short codes up to symmetry and the conjecture scan
//! - [`oracle`]: dense brute-force verification of the fast path
//! - [`cli`]: the command-line front end

pub mod attack;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod info;
pub mod oracle;
pub mod parity;

pub use attack::{AttackGeometry, ErrorModel, PcConvention};
pub use error::{AttackError, CodeError, Error};
pub use gf2::{hamming_code, BitString, CodeSpec};
pub use info::{analyze, InfoReport};
pub use parity::{block_spectrum, BlockSpectrum};
