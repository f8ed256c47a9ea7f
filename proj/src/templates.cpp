#include "vtok/templates.hpp"

#include <fstream>

#include <json.hpp>

#include "io_util.hpp"
#include "vtok/errors.hpp"

namespace vtok {

using nlohmann::json;

std::string to_string(TaskKind t) {
    switch (t) {
        case TaskKind::SpatialGrounding: return "spatial_grounding";
        case TaskKind::TemporalGrounding: return "temporal_grounding";
        case TaskKind::InstanceDynamicCaptioning: return "instance_dynamic_captioning";
    }
    throw ValidationError("unknown task kind");
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "spatial_grounding") return TaskKind::SpatialGrounding;
    if (s == "temporal_grounding") return TaskKind::TemporalGrounding;
    if (s == "instance_dynamic_captioning") return TaskKind::InstanceDynamicCaptioning;
    throw ValidationError("unknown task kind '" + s + "'");
}

namespace {

TemplatePack make_builtin() {
    TemplatePack p;
    p.version = 1;
    p.prompts[static_cast<int>(TaskKind::SpatialGrounding)] = {
        "Please give the bounding box coordinates variation of the object depicted as "
        "<dynamic caption> during the time interval from <t1> to <t2>. Output only the bounding "
        "box coordinates for the start and end times.",
        "I would like to know the bounding box coordinates variation of the object described as "
        "<dynamic caption> during the period from <t1> to <t2>. Just produce the bounding box "
        "coordinates for when it starts and ends.",
        "Can you give me the bounding box coordinates change for the object depicted as "
        "<dynamic caption> from <t1> to <t2>? Only the bounding box coordinates for the beginning "
        "and conclusion should be generated.",
        "Kindly provide the variation in the bounding box coordinates of the object described as "
        "<dynamic caption> from <t1> to <t2>. Simply output the bounding box coordinates that "
        "mark the start and end.",
        "What is the change in the bounding box coordinates of the object depicted as "
        "<dynamic caption> during the interval from <t1> to <t2>? Provide solely the bounding box "
        "coordinates that denote the start and end points.",
        "Let me know the variation in the bounding box coordinates of the object described as "
        "<dynamic caption> during the time span from <t1> to <t2>. Ensure the output includes "
        "only the bounding box coordinates for the start and end.",
        "I need the bounding box coordinates change of the object depicted as <dynamic caption> "
        "during the period from <t1> to <t2>. Limit the output to the bounding box coordinates "
        "of the start and end times.",
        "Kindly tell me the change in the bounding box coordinates for the object depicted as "
        "<dynamic caption> between <t1> and <t2>. You need to output solely the bounding box "
        "coordinates for the start and end times.",
    };
    p.prompts[static_cast<int>(TaskKind::TemporalGrounding)] = {
        "Please give the time interval when the object described as <dynamic caption> "
        "transitions from the bounding box coordinates <bbox1> to <bbox2>.",
        "Could you provide the time interval for the transition of the object, described as "
        "<dynamic caption>, from the bounding box coordinates <bbox1> to <bbox2>?",
        "What is the time interval when the object, depicted as <dynamic caption>, shifts from "
        "the bounding box <bbox1> to <bbox2>?",
        "Kindly indicate the time span for the object, described as <dynamic caption>, "
        "transitioning from <bbox1> to <bbox2>.",
        "Please let me know the duration of time when the object, with a description of "
        "<dynamic caption>, moves from the coordinates <bbox1> to <bbox2>.",
        "Identify the time interval for the object, described as <dynamic caption>, as it "
        "transitions from <bbox1> to <bbox2>.",
        "Could you specify the time period for the object, with a depiction of "
        "<dynamic caption>, moving from <bbox1> to <bbox2>?",
        "Please tell me the duration of time for the object, with a portrayal of "
        "<dynamic caption>, as it transitions from <bbox1> to <bbox2>.",
    };
    p.prompts[static_cast<int>(TaskKind::InstanceDynamicCaptioning)] = {
        "Please describe the object within the time interval from <t1> to <t2>, with bounding "
        "box coordinates starting at <bbox1> and ending at <bbox2>. Include the object's "
        "appearance, changes, and behavior.",
        "Could you describe the object within the time interval from <t1> to <t2>, with bounding "
        "box coordinates beginning at <bbox1> and ending at <bbox2>, and include its appearance, "
        "changes, and behavior?",
        "Describe the object from <t1> to <t2>, with bounding box coordinates that begin at "
        "<bbox1> and end at <bbox2>, and include information on its appearance, alterations, and "
        "behavior.",
        "Could you give a description of the object that is positioned between <t1> and <t2>, "
        "with bounding box coordinates commencing at <bbox1> and finishing at <bbox2>, and "
        "include its appearance, changes, and behavior?",
        "Would you describe the object in the time span from <t1> to <t2>, with bounding box "
        "coordinates that begin at <bbox1> and end at <bbox2>, and mention its appearance, "
        "changes, and behavior?",
        "Please provide a description of the object between <t1> and <t2>, with bounding box "
        "coordinates starting at <bbox1> and ending at <bbox2>, and include its appearance, "
        "changes, and behavior.",
        "Describe the object from <t1> to <t2>, with bounding box coordinates initiating at "
        "<bbox1> and concluding at <bbox2>, and incorporate its appearance, variations, and "
        "behavior.",
        "Could you portray the object from <t1> to <t2>, with bounding box coordinates that "
        "commence at <bbox1> and finish at <bbox2>, and include its appearance, changes, and "
        "behavior?",
    };
    return p;
}

std::string task_json_key(int task_index) {
    return to_string(static_cast<TaskKind>(task_index));
}

} // namespace

const std::string& TemplatePack::prompt(TaskKind task, int template_id) const {
    if (template_id < 1 || template_id > kTemplatesPerTask) {
        throw ValidationError("template_id must lie in [1, " +
                              std::to_string(kTemplatesPerTask) + "], got " +
                              std::to_string(template_id));
    }
    return prompts[static_cast<int>(task)][static_cast<size_t>(template_id) - 1];
}

const TemplatePack& TemplatePack::builtin() {
    static const TemplatePack pack = make_builtin();
    return pack;
}

TemplatePack TemplatePack::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open template pack: " + path);
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw FormatError(path + ": malformed template pack JSON");
    }
    TemplatePack p;
    try {
        p.version = j.at("version").get<int>();
        for (int task = 0; task < kTaskKindCount; ++task) {
            const json& arr = j.at(task_json_key(task));
            if (!arr.is_array() || arr.size() != kTemplatesPerTask) {
                throw FormatError(path + ": each task needs exactly " +
                                  std::to_string(kTemplatesPerTask) + " templates");
            }
            for (int i = 0; i < kTemplatesPerTask; ++i) {
                p.prompts[task][static_cast<size_t>(i)] = arr[static_cast<size_t>(i)].get<std::string>();
            }
        }
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    return p;
}

void TemplatePack::save(const std::string& path) const {
    json j;
    j["version"] = version;
    for (int task = 0; task < kTaskKindCount; ++task) {
        json arr = json::array();
        for (const std::string& s : prompts[task]) {
            arr.push_back(s);
        }
        j[task_json_key(task)] = arr;
    }
    detail::atomic_write(path, [&](std::ofstream& out) { out << j.dump(2) << "\n"; });
}

} // namespace vtok
