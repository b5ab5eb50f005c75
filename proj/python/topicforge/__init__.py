"""LDA topic modelling, TF-IDF baselines and evaluation from Python."""

from ._core import (
    Corpus,
    DataError,
    Document,
    EvalRow,
    Hyperparams,
    InvalidArgument,
    LdaModel,
    ParseError,
    Precision,
    SynthConfig,
    TargetList,
    TfidfTable,
    TopicforgeError,
    UnigramModel,
    Vocabulary,
    build_corpus,
    convergence_report,
    decode_sparse,
    encode_sparse,
    fit_tfidf,
    fit_unigram,
    full_conditional,
    generate_synthetic,
    porter_stem,
    precision,
    preprocess,
    read_corpus,
    read_model,
    sweep_report,
    tfidf_term_lists,
    tfidf_top_terms,
    top_words,
    train,
    train_chains,
    unigram_log_prob,
    wordcount,
    write_model,
)

__version__ = "0.1.0"
