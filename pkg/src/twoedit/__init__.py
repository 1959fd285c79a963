"""Binary codes for two edits: syndromes, error balls, constructions,
decoders and an exhaustive verification harness."""
from .balls import ChannelBudget, edit_ball, mixed_ball, simulate_channel
from .bitseq import BitSeqParseError, as_bitseq, differential
from .codes import CodeSpec, enumerate_code, partition_stats
from .decode import DecodeOutcome, decode_two_edit, decode_two_substitutions, list_decode_two_edit
from .syndromes import SyndromeSpec, vt
from .verify import VerifyReport, verify_correcting, verify_edit_correcting, verify_list

__version__ = "0.1.0"
