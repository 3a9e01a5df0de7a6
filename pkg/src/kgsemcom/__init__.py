"""Graph-symbol communication over a noisy binary channel.

Texts are aligned against a shared knowledge graph, transmitted as
fixed-width triple frames under convolutional coding, repaired against the
graph codebook on the receiving side, and realized back into text; Huffman
and fixed 7-bit character codecs ride the same channel as baselines.
"""

from .aligner import AlignmentResult, align, split_sentences
from .baseline_codecs import (
    HuffmanTable,
    HuffmanTruncationError,
    fixed7_decode,
    fixed7_encode,
    huffman_build,
    huffman_decode,
    huffman_encode,
)
from .channel_codec import (
    ChannelConfig,
    ConvCodeConfig,
    bsc_transmit,
    conv_encode,
    viterbi_decode,
)
from .corpus import Corpus, CorpusError, SourceSample, load_corpus, normalize_label, save_corpus
from .harness import (
    PipelineContext,
    PipelineReport,
    SweepConfig,
    build_context,
    compare_compression,
    corpus_entropy,
    run_pipeline,
    sweep,
)
from .kg_corrector import Codebook, FrameSyncError, correct_frame, correct_payload, hamming
from .kg_store import (
    KnowledgeGraph,
    SymbolDictionary,
    Triple,
    build_dictionary,
    build_kg,
    codebook,
    load_dictionary,
    save_dictionary,
)
from .metrics import (
    EmbeddingVector,
    EntropyReport,
    Vocabulary,
    bleu,
    build_vocab,
    corpus_bleu,
    cosine_score,
    count_bits,
    entropy_report,
    lexical_embed,
    message_entropy,
    semantic_distribution,
)
from .realizer import concat_input, realize, realize_template
from .symbol_codec import SymbolCodecError, SymbolPayload, decode_symbols, encode_symbols

__version__ = "0.1.0"
