#pragma once

#include <stdexcept>
#include <string>

namespace hhmzz {

enum class Errc {
    not_prime,
    not_safe_prime,
    field_mismatch,
    bad_length,
    out_of_range,
    degree_too_small,
    length_mismatch,
    group_too_small,
    duplicate_id,
    unknown_id,
    wrong_phase,
    missing_challenge,
    duplicate_challenge_sender,
    missing_challenge_knowledge,
    victim_not_in_group,
    config_invalid,
    malformed_transcript,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::not_prime: return "NotPrime";
        case Errc::not_safe_prime: return "NotSafePrime";
        case Errc::field_mismatch: return "FieldMismatch";
        case Errc::bad_length: return "BadLength";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::degree_too_small: return "DegreeTooSmall";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::group_too_small: return "GroupTooSmall";
        case Errc::duplicate_id: return "DuplicateId";
        case Errc::unknown_id: return "UnknownId";
        case Errc::wrong_phase: return "WrongPhase";
        case Errc::missing_challenge: return "MissingChallenge";
        case Errc::duplicate_challenge_sender: return "DuplicateChallengeSender";
        case Errc::missing_challenge_knowledge: return "MissingChallengeKnowledge";
        case Errc::victim_not_in_group: return "VictimNotInGroup";
        case Errc::config_invalid: return "ConfigInvalid";
        case Errc::malformed_transcript: return "MalformedTranscript";
    }
    return "Unknown";
}

/// Single exception type for the whole library; tests match on code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace hhmzz
