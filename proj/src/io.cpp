#include "luminal/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "luminal/errors.hpp"
#include "luminal/format.hpp"

namespace luminal {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open for writing: " + path);
    }
    return out;
}

void write_provenance(std::ostream& out, const std::vector<std::string>& provenance) {
    for (const std::string& line : provenance) {
        out << "# " << line << "\n";
    }
}

}  // namespace

Superposition read_superposition(std::istream& in) {
    std::vector<Vec3> momenta;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.empty() || fields[0][0] == '#') {
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields 'px py pz', got " +
                                 std::to_string(fields.size()),
                             line_number);
        }
        Vec3 p;
        try {
            p = Vec3{parse_double(fields[0]), parse_double(fields[1]),
                     parse_double(fields[2])};
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_number);
        }
        if (!p.is_finite()) {
            throw ParseError("momentum is not finite", line_number);
        }
        if (!(p.norm_squared() > 0.0)) {
            throw ParseError("component momentum magnitude must be positive",
                             line_number);
        }
        momenta.push_back(p);
    }
    if (momenta.empty()) {
        throw std::invalid_argument("no components found in input");
    }
    return Superposition::from_momenta(momenta);
}

Superposition read_superposition_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open for reading: " + path);
    }
    return read_superposition(in);
}

void write_superposition(std::ostream& out, const Superposition& s,
                         const std::vector<std::string>& header_comments) {
    write_provenance(out, header_comments);
    for (const WaveComponent& c : s.components()) {
        out << format_double(c.momentum.x) << ' ' << format_double(c.momentum.y) << ' '
            << format_double(c.momentum.z) << "\n";
    }
}

void write_superposition_file(const std::string& path, const Superposition& s,
                              const std::vector<std::string>& header_comments) {
    std::ofstream out = open_for_write(path);
    write_superposition(out, s, header_comments);
}

void write_clock_csv(std::ostream& out, const std::vector<ClockReport>& reports,
                     const std::vector<std::string>& provenance) {
    write_provenance(out, provenance);
    out << "speed,gamma,v_z,residual\n";
    for (const ClockReport& r : reports) {
        out << format_double(r.speed) << ',' << format_double(r.gamma) << ','
            << format_double(r.v_z) << ',' << format_double(r.residual) << "\n";
    }
}

void write_ellipsoid_csv(std::ostream& out, const std::vector<FluxProfile>& profiles,
                         const std::vector<std::string>& provenance) {
    write_provenance(out, provenance);
    out << "v,theta,r_empirical,r_closed_form,r_em\n";
    for (const FluxProfile& profile : profiles) {
        for (const FluxSample& bin : profile.bins) {
            out << format_double(profile.v) << ',' << format_double(bin.theta) << ','
                << format_double(bin.r_empirical) << ','
                << format_double(bin.r_closed_form) << ',' << format_double(bin.r_em)
                << "\n";
        }
    }
}

void write_pair_csv(std::ostream& out, const std::vector<PairRow>& rows,
                    const std::vector<std::string>& provenance) {
    write_provenance(out, provenance);
    out << "v,theta,a,b,r\n";
    for (const PairRow& row : rows) {
        out << format_double(row.v) << ',' << format_double(row.theta) << ','
            << format_double(row.transform.a) << ',' << format_double(row.transform.b)
            << ',' << format_double(row.transform.r) << "\n";
    }
}

void write_sky_csv(std::ostream& out, const std::vector<SkySample>& samples,
                   const std::vector<std::string>& provenance) {
    write_provenance(out, provenance);
    out << "nx,ny,nz,temperature_k\n";
    for (const SkySample& s : samples) {
        out << format_double(s.direction.x) << ',' << format_double(s.direction.y)
            << ',' << format_double(s.direction.z) << ','
            << format_double(s.temperature) << "\n";
    }
}

void write_frame_report(std::ostream& out, const FrameEstimate& estimate,
                        const std::vector<std::string>& provenance) {
    write_provenance(out, provenance);
    const Vec3 recovered = -estimate.beta;
    out << "recovered_beta: " << format_double(recovered.x) << ' '
        << format_double(recovered.y) << ' ' << format_double(recovered.z) << "\n";
    out << "recovered_speed_kms: " << format_double(recovered.norm() * kSpeedOfLightKms)
        << "\n";
    out << "iterations: " << estimate.iterations << "\n";
    out << "final_dipole_ratio: " << format_double(estimate.final_dipole_ratio) << "\n";
}

}  // namespace luminal
