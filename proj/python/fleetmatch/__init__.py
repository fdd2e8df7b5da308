"""Privacy-preserving fleet match-making over Paillier ciphertexts."""

from fleetmatch._core import (
    AttackOutcome,
    BezoutSplit,
    BudgetError,
    Ciphertext,
    CoefficientWrapError,
    CommGraph,
    CorruptCiphertextError,
    DrawRecord,
    InterestSet,
    KeyPair,
    LoopWalk,
    MaliciousQuery,
    PrivateKey,
    PublicKey,
    QueryVector,
    Response,
    Rng,
    SessionResult,
    SolutionSet,
    TranscriptEntry,
    World,
    add_cipher,
    bezout_attack,
    bezout_split,
    ciphertext_field_bytes,
    craft_query,
    decode_query,
    decode_response,
    decrypt,
    dist_response,
    encode_query,
    encode_response,
    encrypt,
    encrypt_with,
    enumerate_solutions,
    enumerate_solutions_distributed,
    find_cut_vertex,
    find_query_loop,
    generate_keys,
    interpret,
    is_connected,
    is_two_connected,
    keypair_from_primes,
    predict_decryption,
    query_message_bytes,
    response_message_bytes,
    return_response,
    run_session,
    sample_unit,
    scalar_mul,
    submit_query,
)

__all__ = [name for name in dir() if not name.startswith("_")]
