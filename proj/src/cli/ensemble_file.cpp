// Copyright 2026 The qlocc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "qlocc/cli.hpp"

namespace qlocc::cli {

using nlohmann::json;

namespace {

class Reader {
   public:
    Reader(std::string_view source, bool strict, std::vector<std::string> &warnings)
        : source_(source), strict_(strict), warnings_(warnings) {}

    [[noreturn]] void fail(const std::string &field, const std::string &what) const {
        throw InputError(source_ + ": " + (field.empty() ? "" : field + ": ") + what);
    }

    void warn(const std::string &field, const std::string &what) {
        warnings_.push_back(source_ + ": " + field + ": " + what);
    }

    void check_keys(const json &obj, const std::string &field, const std::set<std::string> &known) {
        for (const auto &[key, _] : obj.items()) {
            if (!known.count(key)) {
                std::string where = field.empty() ? key : field + "." + key;
                if (strict_) {
                    fail(where, "unknown field");
                }
                warn(where, "unknown field ignored");
            }
        }
    }

    double number(const json &j, const std::string &field) const {
        if (!j.is_number()) {
            fail(field, "expected a number");
        }
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(field, "not finite");
        }
        return v;
    }

    cplx complex(const json &j, const std::string &field) const {
        if (!j.is_array() || j.size() != 2) {
            fail(field, "expected a complex number [re, im]");
        }
        return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
    }

    CVector vector(const json &j, const std::string &field, size_t dim) const {
        if (!j.is_array() || j.size() != dim) {
            fail(field, "expected " + std::to_string(dim) + " amplitudes");
        }
        CVector v;
        for (size_t i = 0; i < dim; i++) {
            v.push_back(complex(j[i], field + "[" + std::to_string(i) + "]"));
        }
        return v;
    }

    /// Rescales a positive quantity to 1 when its drift is within tolerance.
    double unit_scale(double value, const std::string &field, const std::string &what) {
        double drift = std::abs(value - 1);
        if (drift > kNormalizationDrift) {
            std::ostringstream os;
            os << what << " is " << std::setprecision(12) << value << "; drift exceeds "
               << kNormalizationDrift;
            fail(field, os.str());
        }
        if (drift > 1e-12) {
            std::ostringstream os;
            os << what << " " << std::setprecision(17) << value << " renormalized to 1";
            warn(field, os.str());
        }
        return value;
    }

   private:
    std::string source_;
    bool strict_;
    std::vector<std::string> &warnings_;
};

std::string parse_error_context(std::string_view text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; i++) {
        os << std::setw(2) << static_cast<int>(md[i]);
    }
    return os.str();
}

LoadedEnsemble parse_ensemble_text(std::string_view text, bool strict, std::string_view source) {
    LoadedEnsemble out;
    out.sha256 = sha256_hex(text);
    Reader rd(source, strict, out.warnings);

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        rd.fail("", "malformed JSON at " + parse_error_context(text, e.byte));
    }
    if (!doc.is_object()) {
        rd.fail("", "top level must be an object");
    }
    rd.check_keys(doc, "", {"version", "party_dims", "label", "priors", "states"});

    if (!doc.contains("version")) {
        rd.fail("version", "missing");
    }
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1) {
        rd.fail("version", "unsupported version (expected 1)");
    }
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) {
            rd.fail("label", "expected a string");
        }
        out.label = doc["label"].get<std::string>();
    }

    PartyDims dims{2, 2};
    if (doc.contains("party_dims")) {
        const json &pd = doc["party_dims"];
        if (!pd.is_array() || pd.empty()) {
            rd.fail("party_dims", "expected a nonempty array of positive integers");
        }
        dims.clear();
        for (size_t i = 0; i < pd.size(); i++) {
            if (!pd[i].is_number_unsigned() || pd[i].get<size_t>() < 2) {
                rd.fail("party_dims[" + std::to_string(i) + "]", "expected an integer >= 2");
            }
            dims.push_back(pd[i].get<size_t>());
        }
    }
    size_t dim = 1;
    for (size_t d : dims) {
        dim *= d;
        if (dim > 4096) {
            rd.fail("party_dims", "total dimension exceeds 4096");
        }
    }

    if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
        rd.fail("states", "expected a nonempty array");
    }
    const json &states = doc["states"];
    size_t n = states.size();

    if (!doc.contains("priors") || !doc["priors"].is_array()) {
        rd.fail("priors", "expected an array of numbers");
    }
    const json &pj = doc["priors"];
    if (pj.size() != n) {
        rd.fail("priors", "has " + std::to_string(pj.size()) + " entries for " + std::to_string(n) + " states");
    }
    std::vector<double> priors;
    double psum = 0;
    for (size_t i = 0; i < n; i++) {
        double p = rd.number(pj[i], "priors[" + std::to_string(i) + "]");
        if (p < 0) {
            rd.fail("priors[" + std::to_string(i) + "]", "negative prior");
        }
        priors.push_back(p);
        psum += p;
    }
    psum = rd.unit_scale(psum, "priors", "prior sum");
    for (double &p : priors) {
        p /= psum;
    }

    std::vector<CVector> kets;
    std::vector<DensityMatrix> rhos;
    std::vector<std::string> labels;
    for (size_t i = 0; i < n; i++) {
        std::string field = "states[" + std::to_string(i) + "]";
        const json &s = states[i];
        if (!s.is_object()) {
            rd.fail(field, "expected an object");
        }
        rd.check_keys(s, field, {"label", "ket", "density"});
        if (s.contains("ket") == s.contains("density")) {
            rd.fail(field, "give exactly one of \"ket\" or \"density\"");
        }
        if (s.contains("label")) {
            if (!s["label"].is_string()) {
                rd.fail(field + ".label", "expected a string");
            }
            labels.push_back(s["label"].get<std::string>());
        } else {
            labels.push_back(std::to_string(i));
        }
        if (s.contains("ket")) {
            CVector v = rd.vector(s["ket"], field + ".ket", dim);
            double nrm = norm(v);
            if (nrm == 0) {
                rd.fail(field + ".ket", "zero vector");
            }
            nrm = rd.unit_scale(nrm, field + ".ket", "norm");
            for (auto &x : v) {
                x /= nrm;
            }
            kets.push_back(v);
            rhos.push_back(DensityMatrix::from_pure(v, dims));
        } else {
            const json &dj = s["density"];
            std::string df = field + ".density";
            if (!dj.is_array() || dj.size() != dim) {
                rd.fail(df, "expected " + std::to_string(dim) + " rows");
            }
            Matrix m(dim, dim);
            for (size_t r = 0; r < dim; r++) {
                CVector row = rd.vector(dj[r], df + "[" + std::to_string(r) + "]", dim);
                for (size_t c = 0; c < dim; c++) {
                    m(r, c) = row[c];
                }
            }
            if (m.hermiticity_gap() > kNormalizationDrift) {
                rd.fail(df, "not Hermitian");
            }
            m = m.hermitian_part();
            double tr = rd.unit_scale(m.trace().real(), df, "trace");
            m = (1 / tr) * m;
            try {
                rhos.emplace_back(m, dims);
            } catch (const QuantumError &e) {
                rd.fail(df, e.what());
            }
        }
    }

    try {
        if (kets.size() == n) {
            out.ensemble = Ensemble::from_kets(kets, priors, dims);
        } else {
            out.ensemble = Ensemble::from_states(rhos, priors);
        }
        out.ensemble.labels = labels;
        out.ensemble.validate();
    } catch (const std::invalid_argument &e) {
        rd.fail("", e.what());
    }
    return out;
}

LoadedEnsemble parse_ensemble(const std::string &path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ensemble_text(buf.str(), strict, path);
}

}  // namespace qlocc::cli
