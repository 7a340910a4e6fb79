//! Desk-scale laboratory for measuring generative model collapse under
//! recursive self-training.
//!
//! The crate provides, from the bottom up:
//!
//! * dense linear algebra and a manual-gradient MLP ([`matrix`],
//!   [`linalg`], [`nn`]);
//! * a ground-truth Gaussian mixture, KDE density estimation and
//!   Gaussian summary fitting ([`gmm`], [`kde`], [`stats`],
//!   [`dataset`]);
//! * trainable micro-networks: WGAN generator/critic pairs (plain and
//!   class-conditional) and a bottleneck softmax classifier ([`wgan`],
//!   [`classifier`], [`optim`]);
//! * divergence and degradation metrics: Fréchet distance / FID / CFID,
//!   entropic optimal transport and OTDD, MLE bias/variance estimators,
//!   classification degradation ([`frechet`], [`sinkhorn`], [`otdd`],
//!   [`mle`], [`degradation`], [`metric`]);
//! * the sequential process engine: task streams, the bootstrapping
//!   generation loop and both generative-replay regimes ([`stream`],
//!   [`bootstrap`], [`ger`]).
//!
//! Every operation is deterministic given its inputs and an explicit
//! seed; repeated runs of the same experiment produce byte-identical
//! output directories.

pub mod bootstrap;
pub mod checkpoint;
pub mod classifier;
pub mod dataset;
pub mod degradation;
pub mod error;
pub mod frechet;
pub mod ger;
pub mod gmm;
pub mod kde;
pub mod linalg;
pub mod matrix;
pub mod metric;
pub mod mle;
pub mod nn;
pub mod optim;
pub mod otdd;
pub mod rng;
pub mod sinkhorn;
pub mod stats;
pub mod stream;
pub mod wgan;

pub use bootstrap::{bootstrap_run, BootstrapConfig};
pub use classifier::{classifier_accuracy, classifier_train, encoder_embed, ClassifierConfig, ClassifierHandle};
pub use dataset::Dataset;
pub use error::{Error, Result};
pub use frechet::{cfid, fid, frechet_distance_sq, CfidOutcome};
pub use ger::{ger_joint_run, ger_separate_run, GerConfig, GerRegime};
pub use gmm::{default_gmm, gmm_logpdf, gmm_sample, GmmComponent, GmmSpec};
pub use kde::{kde_fit, kde_logpdf, KdeModel};
pub use linalg::{cholesky, sqrtm_psd, sym_eig};
pub use matrix::Matrix;
pub use metric::{MetricName, MetricValue, TaskTrace};
pub use mle::{mle_bias_estimate, mle_variance_estimate, LogDensity};
pub use nn::{finite_diff_grad, mlp_backward, mlp_forward, Activation, GradientSet, MlpParams};
pub use otdd::otdd;
pub use sinkhorn::{sinkhorn, TransportPlan};
pub use stats::{fit_gaussian, fit_gaussian_per_class, GaussianSummary};
pub use stream::{stream_from_gmm, Memory, Stream};
pub use wgan::{
    cwgan_train, generator_sample, wgan_train, ConditionalWganConfig, CriticHandle,
    GeneratorHandle, LossTrace, WganConfig,
};
