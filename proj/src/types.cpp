#include "relimp/types.hpp"

#include "relimp/error.hpp"

namespace relimp {

const char* to_string(OrthMethod m) {
    switch (m) {
        case OrthMethod::johnson: return "johnson";
        case OrthMethod::gs: return "gs";
        case OrthMethod::pc: return "pc";
        case OrthMethod::vm: return "vm";
    }
    return "?";
}

const char* display_name(OrthMethod m) {
    switch (m) {
        case OrthMethod::johnson: return "Johnson";
        case OrthMethod::gs: return "GS";
        case OrthMethod::pc: return "PC";
        case OrthMethod::vm: return "VM";
    }
    return "?";
}

OrthMethod orth_from_string(std::string_view s) {
    for (OrthMethod m : kAllOrthMethods) {
        if (s == to_string(m) || s == display_name(m)) return m;
    }
    throw Error(errc::invalid_config, "unknown orthogonalization tag '" + std::string(s) +
                                          "' (expected johnson|gs|pc|vm)");
}

const char* to_string(ReallocMethod m) {
    switch (m) {
        case ReallocMethod::gda: return "gda";
        case ReallocMethod::corpa: return "corpa";
        case ReallocMethod::regpa: return "regpa";
        case ReallocMethod::ida: return "ida";
    }
    return "?";
}

const char* display_name(ReallocMethod m) {
    switch (m) {
        case ReallocMethod::gda: return "GDA";
        case ReallocMethod::corpa: return "CorPA";
        case ReallocMethod::regpa: return "RegPA";
        case ReallocMethod::ida: return "IdA";
    }
    return "?";
}

ReallocMethod realloc_from_string(std::string_view s) {
    for (ReallocMethod m : kAllReallocMethods) {
        if (s == to_string(m) || s == display_name(m)) return m;
    }
    throw Error(errc::invalid_config, "unknown reallocation tag '" + std::string(s) +
                                          "' (expected gda|corpa|regpa|ida)");
}

const char* to_string(ScenarioLabel s) {
    switch (s) {
        case ScenarioLabel::s11: return "1.1";
        case ScenarioLabel::s12: return "1.2";
        case ScenarioLabel::s21: return "2.1";
        case ScenarioLabel::s22: return "2.2";
    }
    return "?";
}

ScenarioLabel scenario_from_string(std::string_view s) {
    if (s == "1.1") return ScenarioLabel::s11;
    if (s == "1.2") return ScenarioLabel::s12;
    if (s == "2.1") return ScenarioLabel::s21;
    if (s == "2.2") return ScenarioLabel::s22;
    throw Error(errc::schema_mismatch, "unknown scenario label '" + std::string(s) + "'");
}

} // namespace relimp
