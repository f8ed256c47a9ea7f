#ifndef VTOK_TEMPLATES_HPP
#define VTOK_TEMPLATES_HPP

#include <array>
#include <string>

namespace vtok {

enum class TaskKind {
    SpatialGrounding = 0,
    TemporalGrounding = 1,
    InstanceDynamicCaptioning = 2,
};

inline constexpr int kTaskKindCount = 3;

std::string to_string(TaskKind t);
TaskKind task_kind_from_string(const std::string& s);

inline constexpr int kTemplatesPerTask = 8;

/// The instruction template pack: 8 prompt templates per task, addressed by
/// template_id 1..8. Placeholders: <dynamic caption>, <t1>, <t2>, <bbox1>,
/// <bbox2>. The canonical pack ships as resources/templates_v1.json; the
/// built-in pack is the same text compiled in.
struct TemplatePack {
    int version = 1;
    std::array<std::array<std::string, kTemplatesPerTask>, kTaskKindCount> prompts;

    /// Template text for (task, template_id), template_id in [1, 8].
    const std::string& prompt(TaskKind task, int template_id) const;

    static const TemplatePack& builtin();

    /// Loads a pack from its JSON resource form. Malformed -> FormatError.
    static TemplatePack load(const std::string& path);

    /// Writes the pack in the JSON resource form (atomic).
    void save(const std::string& path) const;
};

} // namespace vtok

#endif
