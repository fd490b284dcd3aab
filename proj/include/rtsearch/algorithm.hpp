#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rtsearch {

enum class UpdateRule : std::uint8_t { Lss, LssMarking, Rtaa, RtaaMarking };
enum class SelectRule : std::uint8_t { BestF, BestUnmarked, LeastDelta };

/// One of the six supported learning/selection pairings. Other pairings
/// cannot be constructed.
class AlgorithmSpec {
public:
    static AlgorithmSpec lss_lrta() { return {UpdateRule::Lss, SelectRule::BestF, "LSS-LRTA*", "lss-lrta"}; }
    static AlgorithmSpec alss_lrta() { return {UpdateRule::LssMarking, SelectRule::BestUnmarked, "aLSS-LRTA*", "alss-lrta"}; }
    static AlgorithmSpec dalss_lrta() { return {UpdateRule::Lss, SelectRule::LeastDelta, "daLSS-LRTA*", "dalss-lrta"}; }
    static AlgorithmSpec rtaa() { return {UpdateRule::Rtaa, SelectRule::BestF, "RTAA*", "rtaa"}; }
    static AlgorithmSpec artaa() { return {UpdateRule::RtaaMarking, SelectRule::BestUnmarked, "aRTAA*", "artaa"}; }
    static AlgorithmSpec dartaa() { return {UpdateRule::Rtaa, SelectRule::LeastDelta, "daRTAA*", "dartaa"}; }

    static const std::array<AlgorithmSpec, 6>& all() {
        static const std::array<AlgorithmSpec, 6> specs{lss_lrta(), alss_lrta(), dalss_lrta(), rtaa(), artaa(), dartaa()};
        return specs;
    }

    /// Looks up a pairing; throws std::invalid_argument for the six
    /// combinations that are not algorithms.
    static AlgorithmSpec make(UpdateRule update, SelectRule select) {
        for (const auto& spec : all())
            if (spec.update() == update && spec.select() == select) return spec;
        throw std::invalid_argument("AlgorithmSpec: unsupported update/selection pairing");
    }

    /// Accepts the command-line name ("dartaa") or the display name ("daRTAA*").
    static AlgorithmSpec from_name(std::string_view name) {
        for (const auto& spec : all())
            if (name == spec.cli_name() || name == spec.name()) return spec;
        throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
    }

    UpdateRule update() const { return update_; }
    SelectRule select() const { return select_; }
    const char* name() const { return name_; }
    const char* cli_name() const { return cli_name_; }

    bool lss_learning() const { return update_ == UpdateRule::Lss || update_ == UpdateRule::LssMarking; }
    bool marks() const { return update_ == UpdateRule::LssMarking || update_ == UpdateRule::RtaaMarking; }

    friend bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b) {
        return a.update_ == b.update_ && a.select_ == b.select_;
    }

private:
    AlgorithmSpec(UpdateRule u, SelectRule s, const char* name, const char* cli) : update_(u), select_(s), name_(name), cli_name_(cli) {}

    UpdateRule update_;
    SelectRule select_;
    const char* name_;
    const char* cli_name_;
};

}  // namespace rtsearch
