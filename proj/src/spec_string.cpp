#include "aet/spec_string.hpp"

#include "aet/eigenvalues.hpp"

namespace aet {

EulerProductSpec parse_product_spec(const std::string& s, const SpecParseOptions& opt) {
    if (s == "zeta") return EulerProductSpec::zeta();

    if (s.rfind("dirichlet:", 0) == 0)
        return EulerProductSpec::dirichlet(parse_character(s.substr(10)));

    if (s.rfind("gl2:", 0) == 0) {
        std::string body = s.substr(4);
        std::string chi_part;
        size_t chi_at = body.find(",chi=");
        if (chi_at != std::string::npos) {
            chi_part = body.substr(chi_at + 5); // the character spec runs to the end
            body = body.substr(0, chi_at);
        }
        if (body.rfind("source=", 0) != 0)
            throw spec_parse_error("bad product spec '" + s + "': expected gl2:source=...");
        std::string source = body.substr(7);

        DirichletCharacter chi =
            chi_part.empty() ? DirichletCharacter::principal(1) : parse_character(chi_part);

        if (source == "delta") {
            auto eig = EigenvalueSource::delta(opt.tau_n, opt.threads);
            return EulerProductSpec::gl2_twisted(std::move(eig), std::move(chi), "delta");
        }
        if (source.rfind("file:", 0) == 0) {
            std::string path = source.substr(5);
            if (path.empty())
                throw spec_parse_error("bad product spec '" + s + "': empty file path");
            auto eig = load_eigenvalues(path, opt.allow_ramanujan_violations);
            return EulerProductSpec::gl2_twisted(std::move(eig), std::move(chi), source);
        }
        throw spec_parse_error("bad product spec '" + s + "': unknown source '" + source + "'");
    }

    throw spec_parse_error("bad product spec '" + s +
                           "': expected zeta, dirichlet:..., or gl2:...");
}

} // namespace aet
