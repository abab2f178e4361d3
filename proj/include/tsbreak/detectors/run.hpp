#pragma once

#include <vector>

#include "tsbreak/detect.hpp"
#include "tsbreak/detectors/segmentation.hpp"
#include "tsbreak/detectors/statistical.hpp"
#include "tsbreak/detectors/trend.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

inline std::vector<Detection> run_method(const TimeSeries& ts, Method method,
                                         const DetectorConfig& cfg = {}) {
    switch (method) {
    case Method::BaiPerron: return bai_perron_detect(ts, cfg);
    case Method::Cusum: return cusum_detect(ts, cfg);
    case Method::ChowTest: return chow_detect(ts, cfg);
    case Method::ZivotAndrews: return zivot_andrews_detect(ts, cfg);
    case Method::Pelt: return pelt_detect(ts, cfg);
    case Method::BinarySegmentation: return binseg_detect(ts, cfg);
    case Method::DynamicProgramming: return dynp_detect(ts, cfg);
    case Method::Mosum: return mosum_detect(ts, cfg);
    case Method::WildBinarySegmentation: return wbs_detect(ts, cfg);
    case Method::Prophet: return trend_detect(ts, cfg);
    }
    throw Error("run_method: unhandled method");
}

} // namespace tsbreak
