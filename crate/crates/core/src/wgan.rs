//! Wasserstein GAN with weight clipping, plain and class-conditional.
//!
//! The critic maximizes `mean f(x_real) - mean f(G(z))` with all of its
//! parameters clamped to `[-clip, clip]` after every update; the
//! generator minimizes `-mean f(G(z))`. Both run under RMSProp with the
//! classic WGAN defaults. The conditional variant concatenates a
//! trainable class-embedding row to the latent input, and the critic
//! sees the same embedding next to the data point so it can punish
//! class-mismatched samples.

use crate::dataset::{Dataset, Origin};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nn::{mlp_backward, mlp_forward, Activation, GradientSet, MlpParams, LEAKY_RELU_SLOPE};
use crate::optim::{RmsPropMatrix, RmsPropMlp};
use crate::rng::{stage, stage_rng};
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Unconditional WGAN hyperparameters.
///
/// `gen_dims` and `critic_dims` are the full layer dimension stacks,
/// including input and output widths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WganConfig {
    pub z_dim: usize,
    pub gen_dims: Vec<usize>,
    pub critic_dims: Vec<usize>,
    pub clip_value: f64,
    pub critic_steps_per_gen_step: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub total_gen_steps: usize,
    pub seed: u64,
}

impl Default for WganConfig {
    fn default() -> Self {
        WganConfig {
            z_dim: 2,
            gen_dims: vec![2, 32, 64, 2],
            critic_dims: vec![2, 64, 32, 1],
            clip_value: 0.01,
            critic_steps_per_gen_step: 5,
            learning_rate: 5e-5,
            batch_size: 64,
            total_gen_steps: 6_000,
            seed: 0,
        }
    }
}

impl WganConfig {
    pub fn data_dim(&self) -> usize {
        *self.gen_dims.last().expect("non-empty generator dims")
    }

    pub fn validate(&self) -> Result<()> {
        if self.clip_value <= 0.0 {
            return Err(Error::Config("clip_value must be positive".to_string()));
        }
        if self.critic_steps_per_gen_step < 1 {
            return Err(Error::Config(
                "critic_steps_per_gen_step must be >= 1".to_string(),
            ));
        }
        if self.batch_size < 2 {
            return Err(Error::Config("batch_size must be >= 2".to_string()));
        }
        if self.gen_dims.len() < 2 || self.critic_dims.len() < 2 {
            return Err(Error::Config(
                "generator and critic need at least one layer".to_string(),
            ));
        }
        if self.gen_dims[0] != self.z_dim {
            return Err(Error::Config(format!(
                "generator input width {} != z_dim {}",
                self.gen_dims[0], self.z_dim
            )));
        }
        if self.critic_dims[0] != self.data_dim() {
            return Err(Error::Config(format!(
                "critic input width {} != generator output width {}",
                self.critic_dims[0],
                self.data_dim()
            )));
        }
        if *self.critic_dims.last().unwrap() != 1 {
            return Err(Error::Config("critic must output a scalar".to_string()));
        }
        Ok(())
    }
}

/// Class-conditional WGAN: all base fields plus a trainable `class_count
/// x class_embed_dim` embedding table. The stored `gen_dims` /
/// `critic_dims` are already widened by `class_embed_dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionalWganConfig {
    pub wgan: WganConfig,
    pub class_count: usize,
    pub class_embed_dim: usize,
}

impl ConditionalWganConfig {
    /// Widens the default architecture for `class_count` classes with a
    /// 4-dimensional embedding.
    pub fn with_class_count(class_count: usize) -> Self {
        let embed = 4;
        let mut wgan = WganConfig::default();
        wgan.gen_dims[0] = wgan.z_dim + embed;
        wgan.critic_dims[0] = wgan.data_dim() + embed;
        ConditionalWganConfig {
            wgan,
            class_count,
            class_embed_dim: embed,
        }
    }

    pub fn data_dim(&self) -> usize {
        self.wgan.data_dim()
    }

    pub fn validate(&self) -> Result<()> {
        if self.class_embed_dim < 1 {
            return Err(Error::Config("class_embed_dim must be >= 1".to_string()));
        }
        if self.class_count < 1 {
            return Err(Error::Config("class_count must be >= 1".to_string()));
        }
        if self.wgan.gen_dims[0] != self.wgan.z_dim + self.class_embed_dim {
            return Err(Error::Config(format!(
                "generator input width {} != z_dim {} + class_embed_dim {}",
                self.wgan.gen_dims[0], self.wgan.z_dim, self.class_embed_dim
            )));
        }
        if self.wgan.critic_dims[0] != self.data_dim() + self.class_embed_dim {
            return Err(Error::Config(format!(
                "critic input width {} != data dim {} + class_embed_dim {}",
                self.wgan.critic_dims[0],
                self.data_dim(),
                self.class_embed_dim
            )));
        }
        let mut base = self.wgan.clone();
        base.gen_dims[0] = self.wgan.z_dim;
        base.critic_dims[0] = self.data_dim();
        base.validate()
    }
}

/// Which architecture a handle was trained under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WganSetup {
    Unconditional(WganConfig),
    Conditional(ConditionalWganConfig),
}

impl WganSetup {
    pub fn base(&self) -> &WganConfig {
        match self {
            WganSetup::Unconditional(c) => c,
            WganSetup::Conditional(c) => &c.wgan,
        }
    }

    pub fn data_dim(&self) -> usize {
        self.base().data_dim()
    }

    pub fn class_count(&self) -> Option<usize> {
        match self {
            WganSetup::Unconditional(_) => None,
            WganSetup::Conditional(c) => Some(c.class_count),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WganSetup::Unconditional(c) => c.validate(),
            WganSetup::Conditional(c) => c.validate(),
        }
    }
}

/// Trained generator: parameters, provenance config, the embedding
/// table when conditional, and the cumulative step count.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorHandle {
    pub params: MlpParams,
    pub class_embedding: Option<Matrix>,
    pub config: WganSetup,
    pub trained_steps: usize,
}

/// Trained critic.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticHandle {
    pub params: MlpParams,
    pub trained_steps: usize,
}

/// Per-generator-step loss trace. `critic` holds the critic loss after
/// its final inner update of the step, `generator` the generator loss.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LossTrace {
    pub critic: Vec<f64>,
    pub generator: Vec<f64>,
}

fn gen_activations(layers: usize) -> Vec<Activation> {
    let mut acts = vec![Activation::Relu; layers];
    *acts.last_mut().expect("at least one layer") = Activation::Identity;
    acts
}

fn critic_activations(layers: usize) -> Vec<Activation> {
    let mut acts = vec![Activation::LeakyRelu(LEAKY_RELU_SLOPE); layers];
    *acts.last_mut().expect("at least one layer") = Activation::Identity;
    acts
}

/// Freshly initialized generator/critic pair (plus embedding table for
/// conditional setups), before any training.
pub fn init_models(setup: &WganSetup) -> Result<(GeneratorHandle, CriticHandle)> {
    setup.validate()?;
    let base = setup.base();
    let mut rng = stage_rng(base.seed, &[stage::MODEL_INIT]);
    let gen_params = MlpParams::init_uniform(
        &base.gen_dims,
        &gen_activations(base.gen_dims.len() - 1),
        &mut rng,
    )?;
    let critic_params = MlpParams::init_uniform(
        &base.critic_dims,
        &critic_activations(base.critic_dims.len() - 1),
        &mut rng,
    )?;
    let class_embedding = match setup {
        WganSetup::Unconditional(_) => None,
        WganSetup::Conditional(c) => {
            let bound = 1.0 / (c.class_embed_dim as f64).sqrt();
            let mut table = Matrix::zeros(c.class_count, c.class_embed_dim);
            for r in 0..c.class_count {
                for col in 0..c.class_embed_dim {
                    table.set(r, col, rng.gen_range(-bound..=bound));
                }
            }
            Some(table)
        }
    };
    Ok((
        GeneratorHandle {
            params: gen_params,
            class_embedding,
            config: setup.clone(),
            trained_steps: 0,
        },
        CriticHandle {
            params: critic_params,
            trained_steps: 0,
        },
    ))
}

/// Trains a fresh unconditional WGAN on `real`.
pub fn wgan_train(
    real: &Dataset,
    cfg: &WganConfig,
) -> Result<(GeneratorHandle, CriticHandle, LossTrace)> {
    let setup = WganSetup::Unconditional(cfg.clone());
    let (gen, critic) = init_models(&setup)?;
    train_continue(real, &setup, gen, critic)
}

/// Trains a fresh conditional WGAN on labeled `real`.
pub fn cwgan_train(
    real: &Dataset,
    cfg: &ConditionalWganConfig,
) -> Result<(GeneratorHandle, CriticHandle, LossTrace)> {
    let setup = WganSetup::Conditional(cfg.clone());
    let (gen, critic) = init_models(&setup)?;
    train_continue(real, &setup, gen, critic)
}

/// Continues training existing handles on new data under `setup`
/// (weight reuse between bootstrap tasks). The architecture of the
/// handles must match the setup; the RNG stream comes from
/// `setup.base().seed`.
pub fn train_continue(
    real: &Dataset,
    setup: &WganSetup,
    mut gen: GeneratorHandle,
    mut critic: CriticHandle,
) -> Result<(GeneratorHandle, CriticHandle, LossTrace)> {
    setup.validate()?;
    let cfg = setup.base();
    let conditional = matches!(setup, WganSetup::Conditional(_));
    if real.dim() != setup.data_dim() {
        return Err(Error::Dimension(format!(
            "data dimension {} != generator output dimension {}",
            real.dim(),
            setup.data_dim()
        )));
    }
    if conditional {
        let k = setup.class_count().unwrap();
        match real.class_count() {
            Some(dk) if dk == k => {}
            Some(dk) => {
                return Err(Error::Contract(format!(
                    "data has {dk} classes, config expects {k}"
                )))
            }
            None => {
                return Err(Error::Contract(
                    "conditional training needs labeled data".to_string(),
                ))
            }
        }
    }
    if gen.params.layer_dims != cfg.gen_dims || critic.params.layer_dims != cfg.critic_dims {
        return Err(Error::Contract(
            "handle architecture does not match config".to_string(),
        ));
    }

    let mut rng = stage_rng(cfg.seed, &[stage::TRAIN]);
    let mut gen_opt = RmsPropMlp::new(&gen.params, cfg.learning_rate);
    let mut critic_opt = RmsPropMlp::new(&critic.params, cfg.learning_rate);
    let mut embed_opt = gen
        .class_embedding
        .as_ref()
        .map(|table| RmsPropMatrix::new(table, cfg.learning_rate));
    let mut trace = LossTrace::default();

    let batch = cfg.batch_size;
    let embed_dim = match setup {
        WganSetup::Conditional(c) => c.class_embed_dim,
        WganSetup::Unconditional(_) => 0,
    };

    for step in 0..cfg.total_gen_steps {
        let mut last_critic_loss = 0.0;
        for _ in 0..cfg.critic_steps_per_gen_step {
            let idx = sample_indices(real.len(), batch, &mut rng);
            let labels = batch_labels(real, &idx);
            let real_points = gather_points(real, &idx);
            let z = sample_latents(batch, cfg.z_dim, &mut rng);

            let gen_in = concat_embedding(&z, labels.as_deref(), gen.class_embedding.as_ref())?;
            let (fake, _) = mlp_forward(&gen.params, &gen_in)?;

            let critic_in_real =
                concat_embedding(&real_points, labels.as_deref(), gen.class_embedding.as_ref())?;
            let critic_in_fake =
                concat_embedding(&fake, labels.as_deref(), gen.class_embedding.as_ref())?;
            let (out_real, cache_real) = mlp_forward(&critic.params, &critic_in_real)?;
            let (out_fake, cache_fake) = mlp_forward(&critic.params, &critic_in_fake)?;

            // Minimize mean f(fake) - mean f(real).
            let inv = 1.0 / batch as f64;
            let grad_fake = Matrix::from_vec(batch, 1, vec![inv; batch])?;
            let grad_real = Matrix::from_vec(batch, 1, vec![-inv; batch])?;
            let (g_fake, _) = mlp_backward(&critic.params, &cache_fake, &grad_fake)?;
            let (g_real, _) = mlp_backward(&critic.params, &cache_real, &grad_real)?;
            let grads = add_gradients(g_fake, &g_real);
            critic_opt.step(&mut critic.params, &grads);
            critic.params.clip_all(cfg.clip_value);

            last_critic_loss = mean(&out_fake) - mean(&out_real);
            if !last_critic_loss.is_finite() {
                return Err(Error::Divergence {
                    step,
                    detail: "critic loss is not finite".to_string(),
                });
            }
        }

        // Generator step. A batch of data indices is drawn in both the
        // conditional and unconditional paths (for labels), keeping the
        // random stream identical across the two architectures.
        let idx = sample_indices(real.len(), batch, &mut rng);
        let labels = batch_labels(real, &idx);
        let z = sample_latents(batch, cfg.z_dim, &mut rng);
        let gen_in = concat_embedding(&z, labels.as_deref(), gen.class_embedding.as_ref())?;
        let (fake, gen_cache) = mlp_forward(&gen.params, &gen_in)?;
        let critic_in =
            concat_embedding(&fake, labels.as_deref(), gen.class_embedding.as_ref())?;
        let (out, critic_cache) = mlp_forward(&critic.params, &critic_in)?;

        // Minimize -mean f(G(z)).
        let inv = -1.0 / batch as f64;
        let dout = Matrix::from_vec(batch, 1, vec![inv; batch])?;
        let (_, d_critic_in) = mlp_backward(&critic.params, &critic_cache, &dout)?;
        let d_fake = slice_cols(&d_critic_in, 0, setup.data_dim());
        let (gen_grads, d_gen_in) = mlp_backward(&gen.params, &gen_cache, &d_fake)?;

        if let (Some(table), Some(opt), Some(labels)) =
            (gen.class_embedding.as_mut(), embed_opt.as_mut(), labels.as_ref())
        {
            // The embedding gradient accumulates from both of its uses:
            // the critic input columns and the generator input columns.
            let d_embed_critic = slice_cols(&d_critic_in, setup.data_dim(), embed_dim);
            let d_embed_gen = slice_cols(&d_gen_in, cfg.z_dim, embed_dim);
            let mut table_grad = Matrix::zeros(table.rows(), table.cols());
            for (row, &label) in labels.iter().enumerate() {
                for col in 0..embed_dim {
                    let v = table_grad.get(label, col)
                        + d_embed_critic.get(row, col)
                        + d_embed_gen.get(row, col);
                    table_grad.set(label, col, v);
                }
            }
            opt.step(table, &table_grad);
        }
        gen_opt.step(&mut gen.params, &gen_grads);

        let gen_loss = -mean(&out);
        if !gen_loss.is_finite() {
            return Err(Error::Divergence {
                step,
                detail: "generator loss is not finite".to_string(),
            });
        }
        trace.critic.push(last_critic_loss);
        trace.generator.push(gen_loss);
        gen.trained_steps += 1;
        critic.trained_steps += 1;
    }

    gen.params.check_finite()?;
    critic.params.check_finite()?;
    Ok((gen, critic, trace))
}

/// Draws `n` samples from a trained generator.
///
/// For conditional generators, `class_labels` conditions each sample;
/// when absent, labels are drawn uniformly over the class count. The
/// output is labeled if and only if the generator is conditional.
pub fn generator_sample(
    g: &GeneratorHandle,
    n: usize,
    seed: u64,
    class_labels: Option<&[usize]>,
) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::Contract("sample count must be >= 1".to_string()));
    }
    let mut rng = stage_rng(seed, &[stage::SYNTH_SAMPLE]);
    let z_dim = g.config.base().z_dim;
    let z = sample_latents(n, z_dim, &mut rng);
    match (&g.class_embedding, g.config.class_count()) {
        (Some(table), Some(k)) => {
            let labels: Vec<usize> = match class_labels {
                Some(given) => {
                    if given.len() != n {
                        return Err(Error::Contract(format!(
                            "{} labels for {} samples",
                            given.len(),
                            n
                        )));
                    }
                    if let Some(&bad) = given.iter().find(|&&l| l >= k) {
                        return Err(Error::Contract(format!(
                            "conditioning label {bad} out of range for {k} classes"
                        )));
                    }
                    given.to_vec()
                }
                None => (0..n).map(|_| rng.gen_range(0..k)).collect(),
            };
            let gen_in = concat_embedding(&z, Some(&labels), Some(table))?;
            let (points, _) = mlp_forward(&g.params, &gen_in)?;
            Ok(Dataset::labeled(points, labels, k)?.with_origin(Origin::Synthetic))
        }
        _ => {
            if class_labels.is_some() {
                return Err(Error::Contract(
                    "unconditional generator cannot take class labels".to_string(),
                ));
            }
            let (points, _) = mlp_forward(&g.params, &z)?;
            Ok(Dataset::unlabeled(points)?.with_origin(Origin::Synthetic))
        }
    }
}

fn sample_indices(n: usize, batch: usize, rng: &mut ChaCha12Rng) -> Vec<usize> {
    (0..batch).map(|_| rng.gen_range(0..n)).collect()
}

fn batch_labels(data: &Dataset, idx: &[usize]) -> Option<Vec<usize>> {
    data.labels()
        .map(|labels| idx.iter().map(|&i| labels[i]).collect())
}

fn gather_points(data: &Dataset, idx: &[usize]) -> Matrix {
    let d = data.dim();
    let mut out = Matrix::zeros(idx.len(), d);
    for (row, &i) in idx.iter().enumerate() {
        out.row_mut(row).copy_from_slice(data.point(i));
    }
    out
}

fn sample_latents(n: usize, z_dim: usize, rng: &mut ChaCha12Rng) -> Matrix {
    let mut z = Matrix::zeros(n, z_dim);
    for v in z.as_mut_slice() {
        *v = rng.sample(StandardNormal);
    }
    z
}

/// `[x ; E[y]]` when an embedding table is present, `x` otherwise.
fn concat_embedding(
    x: &Matrix,
    labels: Option<&[usize]>,
    table: Option<&Matrix>,
) -> Result<Matrix> {
    let table = match table {
        Some(t) => t,
        None => return Ok(x.clone()),
    };
    let labels = labels.ok_or_else(|| {
        Error::Contract("conditional model needs labels for every batch".to_string())
    })?;
    let e = table.cols();
    let d = x.cols();
    let mut out = Matrix::zeros(x.rows(), d + e);
    for row in 0..x.rows() {
        let dst = out.row_mut(row);
        dst[..d].copy_from_slice(x.row(row));
        dst[d..].copy_from_slice(table.row(labels[row]));
    }
    Ok(out)
}

fn slice_cols(m: &Matrix, start: usize, width: usize) -> Matrix {
    let mut out = Matrix::zeros(m.rows(), width);
    for r in 0..m.rows() {
        out.row_mut(r).copy_from_slice(&m.row(r)[start..start + width]);
    }
    out
}

fn add_gradients(mut a: GradientSet, b: &GradientSet) -> GradientSet {
    for (wa, wb) in a.weights.iter_mut().zip(&b.weights) {
        for (x, y) in wa.as_mut_slice().iter_mut().zip(wb.as_slice()) {
            *x += y;
        }
    }
    for (ba, bb) in a.biases.iter_mut().zip(&b.biases) {
        for (x, y) in ba.iter_mut().zip(bb) {
            *x += y;
        }
    }
    a
}

fn mean(column: &Matrix) -> f64 {
    column.as_slice().iter().sum::<f64>() / column.as_slice().len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmm::{default_gmm, gmm_sample};

    fn quick_cfg(steps: usize, seed: u64) -> WganConfig {
        WganConfig {
            total_gen_steps: steps,
            seed,
            ..WganConfig::default()
        }
    }

    #[test]
    fn zero_steps_returns_initialized_weights() {
        let data = gmm_sample(&default_gmm(), 256, 1).unwrap();
        let cfg = quick_cfg(0, 3);
        let (gen, critic, trace) = wgan_train(&data.without_labels(), &cfg).unwrap();
        let (gen0, critic0) = init_models(&WganSetup::Unconditional(cfg)).unwrap();
        assert_eq!(gen.params, gen0.params);
        assert_eq!(critic.params, critic0.params);
        assert_eq!(gen.trained_steps, 0);
        assert!(trace.critic.is_empty());
    }

    #[test]
    fn critic_parameters_stay_clipped() {
        let data = gmm_sample(&default_gmm(), 512, 2).unwrap();
        let cfg = quick_cfg(25, 4);
        let (_, critic, _) = wgan_train(&data.without_labels(), &cfg).unwrap();
        assert!(critic.params.max_abs_param() <= cfg.clip_value + 1e-15);
    }

    #[test]
    fn training_is_seed_deterministic() {
        let data = gmm_sample(&default_gmm(), 512, 5).unwrap();
        let cfg = quick_cfg(30, 6);
        let (g1, c1, t1) = wgan_train(&data.without_labels(), &cfg).unwrap();
        let (g2, c2, t2) = wgan_train(&data.without_labels(), &cfg).unwrap();
        assert_eq!(g1.params, g2.params);
        assert_eq!(c1.params, c2.params);
        assert_eq!(t1, t2);
    }

    #[test]
    fn sampling_is_seed_deterministic_and_sized() {
        let data = gmm_sample(&default_gmm(), 256, 7).unwrap();
        let (gen, _, _) = wgan_train(&data.without_labels(), &quick_cfg(5, 8)).unwrap();
        let a = generator_sample(&gen, 100, 11, None).unwrap();
        let b = generator_sample(&gen, 100, 11, None).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.len(), 100);
        assert!(!a.is_labeled());
        assert_eq!(a.origin(), Origin::Synthetic);
        assert!(generator_sample(&gen, 0, 1, None).is_err());
    }

    #[test]
    fn conditional_labels_pass_through() {
        let data = gmm_sample(&default_gmm(), 512, 9).unwrap();
        let mut cfg = ConditionalWganConfig::with_class_count(5);
        cfg.wgan.total_gen_steps = 5;
        cfg.wgan.seed = 10;
        let (gen, _, _) = cwgan_train(&data, &cfg).unwrap();
        assert_eq!(
            gen.class_embedding.as_ref().map(|t| (t.rows(), t.cols())),
            Some((5, 4))
        );
        let labels = vec![3usize; 40];
        let out = generator_sample(&gen, 40, 12, Some(&labels)).unwrap();
        assert_eq!(out.labels().unwrap(), &labels[..]);
        assert!(generator_sample(&gen, 2, 1, Some(&[0, 9])).is_err());
    }

    #[test]
    fn conditional_with_frozen_zero_embedding_matches_unconditional() {
        // Embedding column held at zero: the widened input never feeds
        // the extra weight rows, so the shared parameter trajectory must
        // be bit-identical to the unconditional run.
        let data = gmm_sample(&default_gmm(), 512, 13).unwrap();
        let steps = 100;
        let ucfg = quick_cfg(steps, 14);
        let (gen_u, critic_u) = init_models(&WganSetup::Unconditional(quick_cfg(0, 14))).unwrap();

        // Widen by one zero input column on both nets.
        let mut ccfg = ConditionalWganConfig {
            wgan: ucfg.clone(),
            class_count: 1,
            class_embed_dim: 1,
        };
        ccfg.wgan.gen_dims[0] += 1;
        ccfg.wgan.critic_dims[0] += 1;
        let widen = |params: &MlpParams, extra_at: usize| {
            let mut dims = params.layer_dims.clone();
            dims[0] += 1;
            let mut out = MlpParams::zeros(&dims, &params.activations).unwrap();
            for layer in 0..params.weights.len() {
                out.biases[layer] = params.biases[layer].clone();
                for r in 0..params.weights[layer].rows() {
                    for c in 0..params.weights[layer].cols() {
                        out.weights[layer].set(r, c, params.weights[layer].get(r, c));
                    }
                }
            }
            let _ = extra_at; // appended column: rows stay zero
            out
        };
        let gen_c = GeneratorHandle {
            params: widen(&gen_u.params, ucfg.z_dim),
            class_embedding: Some(Matrix::zeros(1, 1)),
            config: WganSetup::Conditional(ccfg.clone()),
            trained_steps: 0,
        };
        let critic_c = CriticHandle {
            params: widen(&critic_u.params, 2),
            trained_steps: 0,
        };

        let labeled = {
            let labels = vec![0usize; data.len()];
            Dataset::labeled(data.points().clone(), labels, 1).unwrap()
        };
        let (gu, _, _) = train_continue(
            &data.without_labels(),
            &WganSetup::Unconditional(ucfg.clone()),
            gen_u,
            critic_u,
        )
        .unwrap();
        let (gc, _, _) = train_continue(
            &labeled,
            &WganSetup::Conditional(ccfg),
            gen_c,
            critic_c,
        )
        .unwrap();

        // Compare the shared parameter block of the first layer plus all
        // later layers bit for bit.
        for layer in 0..gu.params.weights.len() {
            let wu = &gu.params.weights[layer];
            let wc = &gc.params.weights[layer];
            for r in 0..wu.rows() {
                for c in 0..wu.cols() {
                    assert_eq!(wu.get(r, c), wc.get(r, c), "layer {layer} ({r},{c})");
                }
            }
            assert_eq!(gu.params.biases[layer], gc.params.biases[layer]);
        }
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        let data = gmm_sample(&default_gmm(), 64, 1).unwrap();
        let mut cfg = quick_cfg(1, 1);
        cfg.gen_dims = vec![2, 8, 3];
        cfg.critic_dims = vec![3, 8, 1];
        assert!(wgan_train(&data.without_labels(), &cfg).is_err());
    }
}
