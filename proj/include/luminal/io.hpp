#pragma once

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "luminal/clock.hpp"
#include "luminal/flux.hpp"
#include "luminal/mbr.hpp"
#include "luminal/superposition.hpp"

namespace luminal {

/// Reads a superposition from text: one "px py pz" triple per line,
/// whitespace separated; blank lines and lines whose first non-blank
/// character is '#' are ignored. Throws ParseError with the 1-based line
/// number on malformed input (wrong field count, unparseable or non-finite
/// number, zero-magnitude component), std::invalid_argument if nothing
/// remains.
Superposition read_superposition(std::istream& in);
Superposition read_superposition_file(const std::string& path);

/// Writes one component per line in round-trip decimal form, preceded by
/// '#' header comments if given.
void write_superposition(std::ostream& out, const Superposition& s,
                         const std::vector<std::string>& header_comments = {});
void write_superposition_file(const std::string& path, const Superposition& s,
                              const std::vector<std::string>& header_comments = {});

/// CSV writers. Every file starts with '#' provenance comment lines (passed
/// by the caller: command line, seed, version) followed by a header row.
void write_clock_csv(std::ostream& out, const std::vector<ClockReport>& reports,
                     const std::vector<std::string>& provenance);
void write_ellipsoid_csv(std::ostream& out, const std::vector<FluxProfile>& profiles,
                         const std::vector<std::string>& provenance);

struct PairRow {
    double v = 0.0;
    double theta = 0.0;
    PairTransform transform;
};
void write_pair_csv(std::ostream& out, const std::vector<PairRow>& rows,
                    const std::vector<std::string>& provenance);

void write_sky_csv(std::ostream& out, const std::vector<SkySample>& samples,
                   const std::vector<std::string>& provenance);

/// Plain-text frame-search report: recovered velocity (negated correction),
/// speed in km/s, iterations, final dipole ratio.
void write_frame_report(std::ostream& out, const FrameEstimate& estimate,
                        const std::vector<std::string>& provenance);

}  // namespace luminal
