//! Subcommands. Settings come from the config file, then the environment,
//! then flags.

use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use vaxpulse_core::brands::brand_table_for_records;
use vaxpulse_core::influence::ScoredTweet;
use vaxpulse_core::textprep::word_frequency;
use vaxpulse_core::topics::{
    coherence_cv, coherence_umass, fit_lda, fit_sliced, seed_for_k, topic_distance_matrix, LdaConfig, TopicsError,
};
use vaxpulse_core::{TopicModel, TweetRecord};

use crate::config::{parse_list, DedupMode, KRange, PipelineConfig, ScoreText, DEFAULT_K};
use crate::error::{PipelineError, Result};
use crate::model_io::write_model;
use crate::pipeline;
use crate::records::{load_records, write_records, write_rejections, InputFormat};
use crate::report::{self, create, Weighting};
use crate::resources::load_brand_config;
use crate::sweep::parallel_sweep;

#[derive(Debug, Parser)]
#[command(name = "vaxpulse", version, about = "Vaccine tweet analytics: sentiment, timelines, brand tables and topic models")]
pub struct Cli {
    /// TOML config file; VAXPULSE_<SECTION>_<KEY> variables override it.
    #[arg(long, global = true, env = "VAXPULSE_CONFIG")]
    pub config: Option<PathBuf>,
    /// Output directory for reports [default: output.dir or "."]
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load, deduplicate and filter raw tweet files into corpus.csv.
    Ingest(IngestArgs),
    /// Per-tweet VADER and Weighted-VADER scores.
    Sentiment(SentimentCmd),
    /// Monthly label counts, ratios and mean compound.
    Timeline(TimelineCmd),
    /// Per-brand sentiment table.
    Brands(BrandsCmd),
    /// LDA topics, coherence sweep and time-sliced topics.
    Topics(TopicsCmd),
    /// Top-N word frequencies.
    Freq(FreqCmd),
    /// Every stage in order, from raw files to all reports.
    RunAll(RunAllCmd),
    /// Print the resolved configuration as TOML.
    Config,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Unweighted,
    Weighted,
    Both,
}

impl Mode {
    fn weightings(self) -> &'static [Weighting] {
        match self {
            Mode::Unweighted => &[Weighting::Unweighted],
            Mode::Weighted => &[Weighting::Weighted],
            Mode::Both => &[Weighting::Unweighted, Weighting::Weighted],
        }
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Raw tweet files (.csv, or .jsonl for JSON lines).
    #[arg(long = "in", value_name = "FILE", num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Comma-separated country codes [default: GB,US]
    #[arg(long)]
    pub countries: Option<String>,
    /// Case-insensitive substring every kept tweet must contain.
    #[arg(long)]
    pub keyword: Option<String>,
    #[arg(long, value_enum)]
    pub dedup: Option<DedupArg>,
    /// Corpus file [default: <out-dir>/corpus.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Rejection report [default: rejections.csv next to the corpus]
    #[arg(long)]
    pub rejections: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DedupArg {
    Id,
    Text,
    None,
}

#[derive(Debug, Args)]
pub struct CorpusArg {
    /// Corpus file written by `ingest` [default: <out-dir>/corpus.csv]
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SentimentArgs {
    /// Tab-separated valence lexicon [default: bundled]
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// TOML file overriding boosters, negators, idioms and heuristics.
    #[arg(long)]
    pub modifiers: Option<PathBuf>,
    /// Score the cleaned text (default) or the raw text.
    #[arg(long, value_enum)]
    pub score_text: Option<ScoreText>,
    /// Use (rt + likes + 1) * (followers + listed + 1) as the weight.
    #[arg(long)]
    pub smoothing: bool,
}

#[derive(Debug, Args)]
pub struct SentimentCmd {
    #[command(flatten)]
    pub corpus: CorpusArg,
    #[command(flatten)]
    pub sentiment: SentimentArgs,
    /// Scores file [default: <out-dir>/scores.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Monthly file(s) written next to the scores.
    #[arg(long, value_enum, default_value = "unweighted")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct TimelineCmd {
    #[command(flatten)]
    pub corpus: CorpusArg,
    #[command(flatten)]
    pub sentiment: SentimentArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct BrandArgs {
    /// Brand file: header line per brand, indented keyword lines.
    #[arg(long)]
    pub brand_config: Option<PathBuf>,
    /// Match keywords only at word boundaries.
    #[arg(long)]
    pub word_boundary: bool,
}

#[derive(Debug, Args)]
pub struct BrandsCmd {
    #[command(flatten)]
    pub corpus: CorpusArg,
    #[command(flatten)]
    pub sentiment: SentimentArgs,
    #[command(flatten)]
    pub brands: BrandArgs,
    /// Table file [default: <out-dir>/brands.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TopicArgs {
    /// Number of topics for the reported model.
    #[arg(long)]
    pub k: Option<usize>,
    /// Coherence sweep over an inclusive K range, e.g. 5:40.
    #[arg(long, value_name = "A:B")]
    pub sweep: Option<KRange>,
    /// Also fit chained models on this many equal-count time slices.
    #[arg(long)]
    pub slices: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Doc-topic prior [default: 50/K]
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub chain_strength: Option<f64>,
    /// Stopword file, one term per line.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub no_lemmatize: bool,
    #[arg(long)]
    pub min_doc_freq: Option<usize>,
    #[arg(long)]
    pub max_doc_fraction: Option<f64>,
    /// Words listed per topic.
    #[arg(long)]
    pub top_words: Option<usize>,
    /// Top words scored by coherence.
    #[arg(long)]
    pub coherence_top_n: Option<usize>,
    /// c_v sliding window size.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TopicsCmd {
    #[command(flatten)]
    pub corpus: CorpusArg,
    #[command(flatten)]
    pub topics: TopicArgs,
}

#[derive(Debug, Args)]
pub struct FreqCmd {
    #[command(flatten)]
    pub corpus: CorpusArg,
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub no_lemmatize: bool,
    /// Frequency file [default: <out-dir>/freq.csv]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunAllCmd {
    #[arg(long = "in", value_name = "FILE", num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    #[arg(long)]
    pub countries: Option<String>,
    #[arg(long)]
    pub keyword: Option<String>,
    #[arg(long, value_enum)]
    pub dedup: Option<DedupArg>,
    #[command(flatten)]
    pub sentiment: SentimentArgs,
    #[command(flatten)]
    pub brands: BrandArgs,
    #[command(flatten)]
    pub topics: TopicArgs,
    /// Rows in the frequency export.
    #[arg(long)]
    pub top: Option<usize>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl SentimentArgs {
    fn apply(&self, cfg: &mut PipelineConfig) {
        let s = &mut cfg.sentiment;
        if self.lexicon.is_some() {
            s.lexicon = self.lexicon.clone();
        }
        if self.modifiers.is_some() {
            s.modifiers = self.modifiers.clone();
        }
        set(&mut s.score_text, self.score_text);
        s.smoothing |= self.smoothing;
    }
}

impl BrandArgs {
    fn apply(&self, cfg: &mut PipelineConfig) {
        if self.brand_config.is_some() {
            cfg.brands.config = self.brand_config.clone();
        }
        cfg.brands.word_boundary |= self.word_boundary;
    }
}

impl TopicArgs {
    fn apply(&self, cfg: &mut PipelineConfig) {
        let t = &mut cfg.topics;
        if self.k.is_some() {
            t.k = self.k;
        }
        if self.sweep.is_some() {
            t.sweep = self.sweep;
        }
        if self.slices.is_some() {
            t.slices = self.slices;
        }
        if self.alpha.is_some() {
            t.alpha = self.alpha;
        }
        if self.stopwords.is_some() {
            t.stopwords = self.stopwords.clone();
        }
        set(&mut t.seed, self.seed);
        set(&mut t.beta, self.beta);
        set(&mut t.iterations, self.iterations);
        set(&mut t.burn_in, self.burn_in);
        set(&mut t.chain_strength, self.chain_strength);
        set(&mut t.min_doc_freq, self.min_doc_freq);
        set(&mut t.max_doc_fraction, self.max_doc_fraction);
        set(&mut t.top_words, self.top_words);
        set(&mut t.coherence_top_n, self.coherence_top_n);
        set(&mut t.window, self.window);
        t.lemmatize &= !self.no_lemmatize;
    }
}

fn apply_ingest(
    cfg: &mut PipelineConfig,
    inputs: &[PathBuf],
    countries: &Option<String>,
    keyword: &Option<String>,
    dedup: Option<DedupArg>,
) {
    let i = &mut cfg.ingest;
    if !inputs.is_empty() {
        i.inputs = inputs.to_vec();
    }
    if let Some(c) = countries {
        i.countries = parse_list(c);
    }
    if keyword.is_some() {
        i.keyword = keyword.clone();
    }
    set(
        &mut i.dedup,
        dedup.map(|d| match d {
            DedupArg::Id => DedupMode::Id,
            DedupArg::Text => DedupMode::Text,
            DedupArg::None => DedupMode::None,
        }),
    );
}

fn usage_error(subcommand: &str, msg: &str) -> PipelineError {
    let mut cmd = Cli::command();
    cmd.build();
    let usage = cmd
        .find_subcommand_mut(subcommand)
        .map(|c| c.render_usage().to_string())
        .unwrap_or_default();
    PipelineError::config(format!("{msg}\n\n{usage}\n\nFor more information, try '--help'."))
}

fn topics_error(e: TopicsError) -> PipelineError {
    match e {
        TopicsError::InvalidParameter(_) | TopicsError::TooFewSlices(_) => PipelineError::config(e),
        other => PipelineError::data(other),
    }
}

fn load_corpus(path: &Path) -> Result<Vec<TweetRecord>> {
    let loaded = load_records(path)?;
    if !loaded.rejections.is_empty() {
        log::warn!("{}: skipped {} unreadable row(s)", path.display(), loaded.rejections.len());
    }
    Ok(loaded.records)
}

/// Resolved settings plus the output directory.
struct Ctx {
    cfg: PipelineConfig,
}

impl Ctx {
    fn out(&self, name: &str) -> PathBuf {
        self.cfg.output.dir.join(name)
    }

    fn corpus_path(&self, arg: &CorpusArg) -> PathBuf {
        arg.corpus.clone().unwrap_or_else(|| self.out("corpus.csv"))
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let mut cfg = PipelineConfig::from_env_and_file(cli.config.as_deref())?;
    if let Some(dir) = &cli.out_dir {
        cfg.output.dir = dir.clone();
    }
    match cli.command {
        Command::Ingest(a) => {
            apply_ingest(&mut cfg, &a.inputs, &a.countries, &a.keyword, a.dedup);
            check_ingest(&cfg, "ingest")?;
            let ctx = Ctx { cfg };
            let out = a.out.clone().unwrap_or_else(|| ctx.out("corpus.csv"));
            let rej = a
                .rejections
                .clone()
                .unwrap_or_else(|| out.with_file_name("rejections.csv"));
            stage_ingest(&ctx, &out, &rej).map(drop)
        }
        Command::Sentiment(a) => {
            a.sentiment.apply(&mut cfg);
            let ctx = Ctx { cfg };
            let records = load_corpus(&ctx.corpus_path(&a.corpus))?;
            let out = a.out.clone().unwrap_or_else(|| ctx.out("scores.csv"));
            let scored = stage_sentiment(&ctx, &records, &out)?;
            let dir = out.parent().map(Path::to_path_buf).unwrap_or_default();
            write_timelines(&scored, a.mode, &dir)
        }
        Command::Timeline(a) => {
            a.sentiment.apply(&mut cfg);
            let ctx = Ctx { cfg };
            let records = load_corpus(&ctx.corpus_path(&a.corpus))?;
            let scored = score(&ctx, &records)?;
            write_timelines(&scored, a.mode, &ctx.cfg.output.dir)
        }
        Command::Brands(a) => {
            a.sentiment.apply(&mut cfg);
            a.brands.apply(&mut cfg);
            let ctx = Ctx { cfg };
            let records = load_corpus(&ctx.corpus_path(&a.corpus))?;
            let out = a.out.clone().unwrap_or_else(|| ctx.out("brands.csv"));
            stage_brands(&ctx, &records, &out)
        }
        Command::Topics(a) => {
            a.topics.apply(&mut cfg);
            let ctx = Ctx { cfg };
            let records = load_corpus(&ctx.corpus_path(&a.corpus))?;
            stage_topics(&ctx, &records)
        }
        Command::Freq(a) => {
            set(&mut cfg.freq.top, a.top);
            if a.stopwords.is_some() {
                cfg.topics.stopwords = a.stopwords.clone();
            }
            cfg.topics.lemmatize &= !a.no_lemmatize;
            let ctx = Ctx { cfg };
            let records = load_corpus(&ctx.corpus_path(&a.corpus))?;
            let out = a.out.clone().unwrap_or_else(|| ctx.out("freq.csv"));
            stage_freq(&ctx, &records, &out)
        }
        Command::RunAll(a) => {
            apply_ingest(&mut cfg, &a.inputs, &a.countries, &a.keyword, a.dedup);
            a.sentiment.apply(&mut cfg);
            a.brands.apply(&mut cfg);
            a.topics.apply(&mut cfg);
            set(&mut cfg.freq.top, a.top);
            check_ingest(&cfg, "run-all")?;
            let ctx = Ctx { cfg };
            let records = stage_ingest(&ctx, &ctx.out("corpus.csv"), &ctx.out("rejections.csv"))?;
            let scored = stage_sentiment(&ctx, &records, &ctx.out("scores.csv"))?;
            write_timelines(&scored, Mode::Both, &ctx.cfg.output.dir)?;
            stage_brands(&ctx, &records, &ctx.out("brands.csv"))?;
            stage_topics(&ctx, &records)?;
            stage_freq(&ctx, &records, &ctx.out("freq.csv"))
        }
        Command::Config => {
            print!("{}", cfg.to_toml());
            Ok(())
        }
    }
}

fn check_ingest(cfg: &PipelineConfig, sub: &str) -> Result<()> {
    if cfg.ingest.keyword.as_deref().map_or(true, str::is_empty) {
        return Err(usage_error(sub, "error: a keyword is required (--keyword or [ingest] keyword)"));
    }
    if cfg.ingest.inputs.is_empty() {
        return Err(usage_error(sub, "error: no input files (--in or [ingest] inputs)"));
    }
    if cfg.ingest.countries.is_empty() {
        return Err(usage_error(sub, "error: the country set is empty"));
    }
    Ok(())
}

fn stage_ingest(ctx: &Ctx, out: &Path, rejections: &Path) -> Result<Vec<TweetRecord>> {
    let (records, rejected) = pipeline::ingest(&ctx.cfg.ingest.inputs, &ctx.cfg.ingest)?;
    write_records(create(out)?, &records, InputFormat::from_path(out))?;
    write_rejections(create(rejections)?, &rejected)?;
    log::info!("{}: {} records", out.display(), records.len());
    Ok(records)
}

fn score(ctx: &Ctx, records: &[TweetRecord]) -> Result<Vec<ScoredTweet>> {
    let analyzer = pipeline::analyzer(&ctx.cfg.sentiment)?;
    pipeline::score_records(records, &analyzer, &ctx.cfg.sentiment)
}

fn stage_sentiment(ctx: &Ctx, records: &[TweetRecord], out: &Path) -> Result<Vec<ScoredTweet>> {
    let scored = score(ctx, records)?;
    report::write_scores(create(out)?, &scored)?;
    Ok(scored)
}

fn write_timelines(scored: &[ScoredTweet], mode: Mode, dir: &Path) -> Result<()> {
    let months = pipeline::timeline(scored)?;
    for &w in mode.weightings() {
        report::write_timeline(create(&dir.join(w.file_name()))?, &months, w)?;
    }
    Ok(())
}

fn stage_brands(ctx: &Ctx, records: &[TweetRecord], out: &Path) -> Result<()> {
    let lexicon = load_brand_config(ctx.cfg.brands.config.as_deref())?.with_word_boundary(ctx.cfg.brands.word_boundary);
    let analyzer = pipeline::analyzer(&ctx.cfg.sentiment)?;
    let rows = brand_table_for_records(records, &lexicon, &analyzer, pipeline::score_input(&ctx.cfg.sentiment));
    report::write_brands(create(out)?, &rows)
}

fn stage_freq(ctx: &Ctx, records: &[TweetRecord], out: &Path) -> Result<()> {
    if ctx.cfg.freq.top == 0 {
        return Err(PipelineError::config("--top must be at least 1"));
    }
    let tp = pipeline::topic_pipeline(&ctx.cfg.topics)?;
    let docs = pipeline::topic_tokens(records, &tp);
    report::write_freq(create(out)?, &word_frequency(&docs, ctx.cfg.freq.top))
}

fn stage_topics(ctx: &Ctx, records: &[TweetRecord]) -> Result<()> {
    let t = &ctx.cfg.topics;
    if t.top_words == 0 {
        return Err(PipelineError::config("top_words must be at least 1"));
    }
    let tp = pipeline::topic_pipeline(t)?;
    let docs = pipeline::topic_tokens(records, &tp);
    let vocab = pipeline::vocabulary(&docs, t)?;
    let bow = pipeline::bag_of_words(&docs, &vocab)?;
    log::info!("topic corpus: {} docs, {} terms, {} tokens", bow.n_docs(), vocab.len(), bow.total_tokens());

    let k = match t.sweep {
        Some(range) => {
            let report = parallel_sweep(&bow, &range.values(), &pipeline::sweep_config(t)).map_err(topics_error)?;
            report::write_coherence(create(&ctx.out("coherence.csv"))?, &report)?;
            report::write_timing(create(&ctx.out("coherence_timing.csv"))?, &report)?;
            log::info!("coherence peaks at k={}", report.chosen_k);
            t.k.unwrap_or(report.chosen_k)
        }
        None => t.k.unwrap_or(DEFAULT_K),
    };

    let lda = LdaConfig {
        seed: seed_for_k(t.seed, k),
        ..pipeline::lda_config(t)
    };
    let model = fit_lda(&bow, k, &lda).map_err(topics_error)?;
    report::write_topics(create(&ctx.out("topics.csv"))?, &model, t.top_words)?;
    let cv = coherence_cv(&model, &bow, t.coherence_top_n, t.window).map_err(topics_error)?;
    let umass = coherence_umass(&model, &bow, t.coherence_top_n.max(2)).map_err(topics_error)?;
    report::write_topic_coherence(create(&ctx.out("topic_coherence.csv"))?, &cv, &umass)?;
    report::write_matrix(
        create(&ctx.out("topic_distances.csv"))?,
        &topic_distance_matrix(&model.phi, &model.phi),
    )?;
    write_model(create(&ctx.out("model.txt"))?, &model)?;

    if let Some(n) = t.slices {
        let (labels, models) = sliced(ctx, records, &tp, &vocab, n, &lda, k)?;
        report::write_slices(create(&ctx.out("topic_slices.csv"))?, &labels, &models, t.top_words)?;
    }
    Ok(())
}

fn sliced(
    ctx: &Ctx,
    records: &[TweetRecord],
    tp: &vaxpulse_core::textprep::TopicPipeline,
    vocab: &vaxpulse_core::Vocabulary,
    n: usize,
    lda: &LdaConfig,
    k: usize,
) -> Result<(Vec<String>, Vec<TopicModel>)> {
    if n < 2 {
        return Err(PipelineError::config("--slices needs at least 2 slices"));
    }
    let mut labels = Vec::with_capacity(n);
    let mut bows = Vec::with_capacity(n);
    for (label, docs) in pipeline::sliced_docs(records, n, tp)? {
        bows.push(pipeline::bag_of_words(&docs, vocab).map_err(|e| PipelineError::data(format!("{label}: {e}")))?);
        labels.push(label);
    }
    let models = fit_sliced(&bows, k, lda, ctx.cfg.topics.chain_strength).map_err(topics_error)?;
    Ok((labels, models))
}
